#include "doctest.h"
#include "iwa/pollack.hpp"
#include "iwa/rng.hpp"

using iwa::PadicScalar;
using iwa::QuadExtScalar;
using iwa::Sign;
using GR = iwa::GroupRingElem<PadicScalar>;
using QGR = iwa::QuadGroupRing;

namespace {

// Exact rational model of Q[Delta x C_P]: row-major (p-1) x P grids of mpq.
using RatGrid = std::vector<mpq_class>;

RatGrid rat_mul(const RatGrid& f, const RatGrid& g, int p, int P) {
    RatGrid out(f.size(), 0);
    for (int s1 = 0; s1 < p - 1; ++s1)
        for (int r1 = 0; r1 < P; ++r1) {
            const mpq_class& a = f[static_cast<size_t>(s1 * P + r1)];
            if (a == 0) continue;
            for (int s2 = 0; s2 < p - 1; ++s2)
                for (int r2 = 0; r2 < P; ++r2)
                    out[static_cast<size_t>(((s1 + s2) % (p - 1)) * P + (r1 + r2) % P)] +=
                        a * g[static_cast<size_t>(s2 * P + r2)];
        }
    return out;
}

// p^{1-k} prod_j prod_t Phi_t(u^{-j} gamma)/p with u = 1 + p, expanded over Q.
RatGrid rat_log(int p, int n, int k, Sign sign) {
    const int P = static_cast<int>(iwa::int_pow(p, n - 1));
    RatGrid f(static_cast<size_t>((p - 1) * P), 0);
    f[0] = 1;
    mpq_class scale = 1;
    for (int i = 0; i < k - 1; ++i) scale /= p;
    f[0] = scale;
    for (int j = 0; j <= k - 2; ++j)
        for (int t = sign == Sign::Plus ? 2 : 1; t < n; t += 2) {
            RatGrid factor(f.size(), 0);
            const long step = iwa::int_pow(p, t - 1);
            mpq_class w = 1;
            mpq_class base = 1;
            for (long i = 0; i < j * step; ++i) base /= (1 + p);
            for (int i = 0; i < p; ++i) {
                factor[static_cast<size_t>((i * step) % P)] += w / p;
                w *= base;
            }
            f = rat_mul(f, factor, p, P);
        }
    return f;
}

PadicScalar to_padic(const mpq_class& q, int p, int N) {
    if (q == 0) return PadicScalar::zero(p, N);
    return PadicScalar::from_rational(p, N, q.get_num(), q.get_den());
}

RatGrid random_grid(iwa::SplitMix64& rng, int p, int n, long bound) {
    RatGrid g(static_cast<size_t>((p - 1) * iwa::int_pow(p, n - 1)));
    for (auto& x : g) x = static_cast<long>(rng.below(static_cast<uint64_t>(2 * bound))) - bound;
    return g;
}

QGR to_quad(const RatGrid& g, int p, int n, const PadicScalar& s) {
    std::vector<QuadExtScalar> c;
    for (const auto& x : g) c.push_back(QuadExtScalar::from_base(to_padic(x, p, s.cap()), s));
    return QGR(p, n, c);
}

iwa::PMDecomposition make_pm(const RatGrid& plus, const RatGrid& minus, int p, int n, int k, int N) {
    const auto s = iwa::pair_alpha_square(p, N, k, 1);
    return {k, 1, to_quad(plus, p, n, s), to_quad(minus, p, n, s), {}, {}};
}

}  // namespace

TEST_CASE("compose against a rational multiply-accumulate oracle") {
    iwa::SplitMix64 rng(17);
    const int p = 3, N = 40;
    for (int k = 2; k <= 4; ++k)
        for (int n = 1; n <= 3; ++n) {
            const int P = static_cast<int>(iwa::int_pow(p, n - 1));
            auto A = random_grid(rng, p, n, 20), B = random_grid(rng, p, n, 20);
            auto pair = iwa::compose(make_pm(A, B, p, n, k, N));
            auto plus = rat_mul(rat_log(p, n, k, Sign::Plus), A, p, P);
            auto minus = rat_mul(rat_log(p, n, k, Sign::Minus), B, p, P);
            for (size_t i = 0; i < plus.size(); ++i) {
                CHECK(pair.L1.coeffs()[i].a() == to_padic(plus[i], p, N));
                CHECK(pair.L1.coeffs()[i].b() == to_padic(minus[i], p, N));
                CHECK(pair.L2.coeffs()[i].a() == to_padic(plus[i], p, N));
                CHECK(pair.L2.coeffs()[i].b() == to_padic(-minus[i], p, N));
            }
            CHECK(pair.twists.size() == static_cast<size_t>(k - 2));
        }
}

TEST_CASE("compose edge cases") {
    const int p = 3, n = 3, k = 3, N = 40;
    const size_t size = 18;
    auto zero = make_pm(RatGrid(size, 0), RatGrid(size, 0), p, n, k, N);
    auto pair = iwa::compose(zero);
    CHECK(pair.L1.is_zero());
    CHECK(pair.L2.is_zero());
    iwa::SplitMix64 rng(2);
    auto pm = make_pm(random_grid(rng, p, n, 9), RatGrid(size, 0), p, n, k, N);
    auto only_plus = iwa::compose(pm);
    CHECK(only_plus.L1 == only_plus.L2);
    const auto s = pm.Lplus.proto().s();
    CHECK(only_plus.L1 == iwa::promote(iwa::log_trunc({p, k, n, Sign::Plus, 1, N}), s) * pm.Lplus);
}

TEST_CASE("decompose round trip") {
    iwa::SplitMix64 rng(5);
    const int p = 3, N = 40;
    for (int k = 2; k <= 3; ++k)
        for (int n = 1; n <= 4; ++n)
            for (int t = 0; t < 4; ++t) {
                auto pm = make_pm(random_grid(rng, p, n, 30), random_grid(rng, p, n, 30), p, n, k, N);
                auto pair = iwa::compose(pm);
                auto back = iwa::decompose(pair);
                const auto s = pm.Lplus.proto().s();
                const auto lp = iwa::promote(iwa::log_trunc({p, k, n, Sign::Plus, 1, N}), s);
                const auto lm = iwa::promote(iwa::log_trunc({p, k, n, Sign::Minus, 1, N}), s);
                CHECK(lp * back.Lplus == lp * pm.Lplus);
                CHECK(lm * back.Lminus == lm * pm.Lminus);
                auto again = iwa::compose(back, false);
                CHECK(again.L1 == pair.L1);
                CHECK(again.L2 == pair.L2);
                CHECK(iwa::min_half_valuation(back.Lplus) >= 0);
                CHECK(iwa::min_half_valuation(back.Lminus) >= 0);
                // L1 + L2 stays in the base field.
                for (const auto& c : (pair.L1 + pair.L2).coeffs()) CHECK(c.b().is_zero());
            }
}

TEST_CASE("decompose failures and small cases") {
    const int p = 3, N = 40;
    const auto s = iwa::pair_alpha_square(p, N, 2, 1);
    auto constant_pair = [&](int n, long c) {
        auto one = QGR::monomial(p, n, 0, 0, QuadExtScalar::from_base(PadicScalar::from_int(p, N, c), s));
        return iwa::AdmissiblePair{2, 1, one, one, {}};
    };
    try {
        iwa::decompose(constant_pair(3, 1));
        FAIL("expected NotDecomposable");
    } catch (const iwa::Error& e) {
        CHECK(e.kind() == iwa::ErrorKind::NotDecomposable);
    }
    auto pm = iwa::decompose(constant_pair(2, 5));
    CHECK(pm.Lplus == QGR::monomial(p, 2, 0, 0, QuadExtScalar::from_base(PadicScalar::from_int(p, N, 15), s)));
    CHECK(pm.Lminus.is_zero());

    // A pair whose plus part needs a denominator breaks the O(1) floor.
    auto tiny = QGR::monomial(p, 2, 0, 0, QuadExtScalar::from_base(PadicScalar::one(p, N).mul_p_power(-3), s));
    try {
        iwa::decompose({2, 1, tiny, tiny, {}});
        FAIL("expected UnboundedResult");
    } catch (const iwa::Error& e) {
        CHECK(e.kind() == iwa::ErrorKind::UnboundedResult);
    }
    CHECK_NOTHROW(iwa::decompose({2, 1, tiny, tiny, {}}, {-5}));
}

TEST_CASE("admissibility of composed pairs") {
    iwa::SplitMix64 rng(9);
    const int p = 3, N = 40;
    for (int k = 2; k <= 4; ++k)
        for (int n = 1; n <= 4; ++n) {
            auto pm = make_pm(random_grid(rng, p, n, 30), random_grid(rng, p, n, 30), p, n, k, N);
            auto pair = iwa::compose(pm);
            auto report = iwa::check_admissible(pair);
            CHECK(report.all_passed());
            CHECK(!report.used_canonical_lift);
            const auto c = QuadExtScalar::from_base(PadicScalar::from_int(p, N, 7), pair.L1.proto().s());
            auto scaled = pair;
            scaled.L1 = scaled.L1.scaled(c);
            scaled.L2 = scaled.L2.scaled(c);
            for (auto& t : scaled.twists) {
                t.L1 = t.L1.scaled(c);
                t.L2 = t.L2.scaled(c);
            }
            CHECK(iwa::check_admissible(scaled).all_passed());
        }
    const auto s = iwa::pair_alpha_square(p, N, 2, 1);
    auto one = QGR::one(p, 3, QuadExtScalar::from_base(PadicScalar::one(p, N), s));
    auto report = iwa::check_admissible({2, 1, one, QGR::zero(p, 3, one.proto()), {}});
    CHECK(!report.all_passed());
    CHECK(report.failures == report.checked);
}
