// Runs the twelve acceptance criteria at full size and prints one PASS/FAIL
// line per criterion. Exit status is nonzero when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "../unit/oracles.hpp"
#include "iwa/pollack.hpp"
#include "iwa/qpn_lab.hpp"

using namespace iwa;
using GR = GroupRingElem<PadicScalar>;

namespace {

constexpr int kCap = 40;

struct Outcome {
    bool passed = true;
    std::string detail;

    void fail(const std::string& what) {
        if (passed) detail = what;
        passed = false;
    }
    void expect(bool ok, const std::string& what) {
        if (!ok) fail(what);
    }
};

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string where(int p, int n) { return "p=" + std::to_string(p) + " n=" + std::to_string(n); }

// Exact integer grids, reduced to p-adics only at the boundary.
using IntGrid = std::vector<mpz_class>;

GR to_element(const IntGrid& g, int p, int n, int cap = kCap) {
    std::vector<PadicScalar> c;
    c.reserve(g.size());
    for (const auto& x : g) c.push_back(PadicScalar::from_integer(p, cap, x));
    return GR(p, n, std::move(c));
}

IntGrid random_grid(SplitMix64& rng, int p, int n, const mpz_class& bound) {
    const size_t size = static_cast<size_t>((p - 1) * int_pow(p, n - 1));
    IntGrid g(size);
    gmp_randclass r(gmp_randinit_default);
    r.seed(rng.next());
    for (auto& x : g) x = r.get_z_range(bound);
    return g;
}

IntGrid times_phi(const IntGrid& g, int p, int n, int m) {
    const long P = int_pow(p, n - 1);
    const long step = int_pow(p, m - 1);
    IntGrid out(g.size(), 0);
    for (int sigma = 0; sigma < p - 1; ++sigma)
        for (long r = 0; r < P; ++r)
            for (int i = 0; i < p; ++i)
                out[static_cast<size_t>(sigma * P + (r + i * step) % P)] += g[static_cast<size_t>(sigma * P + r)];
    return out;
}

// Every Delta-row vanishes at zeta_{p^m}, computed over Z.
bool rows_vanish(const IntGrid& g, int p, int n, int m) {
    const long P = int_pow(p, n - 1);
    for (int sigma = 0; sigma < p - 1; ++sigma) {
        std::vector<mpz_class> row(g.begin() + sigma * P, g.begin() + (sigma + 1) * P);
        for (const auto& c : oracle::reduce_cyclotomic(row, p, m))
            if (c != 0) return false;
    }
    return true;
}

// Every coefficient of `back` is known mod p^N and agrees there with the integer grid.
bool exact_mod_pN(const GR& back, const IntGrid& g, int p) {
    const mpz_class M = oracle::pow_int(p, kCap);
    for (size_t i = 0; i < g.size(); ++i) {
        const PadicScalar& c = back.coeffs()[i];
        if (c.absolute_precision() < kCap) return false;
        if (oracle::mod(c.residue(kCap) - g[i], M) != 0) return false;
    }
    return true;
}

// Equal wherever both are known, and at most `loss` digits of absolute precision given up.
bool equal_within(const GR& back, const GR& f, int64_t loss) {
    if (!(back == f)) return false;
    for (size_t i = 0; i < f.coeffs().size(); ++i)
        if (back.coeffs()[i].absolute_precision() < std::min<int64_t>(f.coeffs()[i].absolute_precision(), kCap) - loss)
            return false;
    return true;
}

struct DivisionStats {
    size_t divisible = 0;
    size_t checked = 0;
    double criterion_seconds = 0;
    double division_seconds = 0;
};

// Criteria 1 and 2 share the same population of elements.
DivisionStats lin_population(Outcome& criterion, Outcome& division) {
    DivisionStats stats;
    SplitMix64 rng(20240611);
    for (int p : {3, 5})
        for (int n = 2; n <= 4; ++n)
            for (int m = 1; m < n; ++m) {
                const GR ph = phi(p, n, m, PadicScalar::one(p, kCap));
                const mpz_class bound = oracle::pow_int(p, kCap);
                std::vector<IntGrid> population;
                for (int i = 0; i < 500; ++i) population.push_back(random_grid(rng, p, n, bound));
                for (int i = 0; i < 200; ++i)
                    population.push_back(times_phi(random_grid(rng, p, n, bound), p, n, m));
                std::vector<char> agree(population.size()), divisible(population.size());
                std::vector<std::string> div_failure(population.size());
                auto t0 = std::chrono::steady_clock::now();
                parallel_for(population.size(), worker_count(), [&](size_t i) {
                    const IntGrid& g = population[i];
                    const GR f = to_element(g, p, n);
                    const bool criterion_says = divisible_by_phi(f, m);
                    bool slot_zero = true;
                    for (const auto& c : crt_component(f, m)) slot_zero = slot_zero && c.is_zero();
                    const bool exact = rows_vanish(g, p, n, m);
                    agree[i] = criterion_says == slot_zero && slot_zero == exact;
                    divisible[i] = criterion_says;
                });
                auto t1 = std::chrono::steady_clock::now();
                parallel_for(population.size(), worker_count(), [&](size_t i) {
                    if (!divisible[i]) return;
                    const IntGrid& g = population[i];
                    const GR f = to_element(g, p, n);
                    // Integral representative: every digit mod p^N known and equal.
                    if (!exact_mod_pN(divide_exact(f, m, QuotientRep::LowDegree) * ph, g, p))
                        div_failure[i] = "low-degree product not exact mod p^N";
                    // Zero-slot representative: its p^{-(n-1)} denominators cost n - 1 digits.
                    else if (!equal_within(divide_exact(f, m) * ph, f, n - 1))
                        div_failure[i] = "zero-slot product differs or lost more than n-1 digits";
                    // With those digits supplied up front the product is exact mod p^N.
                    else {
                        const int wide = kCap + n - 1;
                        const GR fw = to_element(g, p, n, wide);
                        if (!exact_mod_pN(divide_exact(fw, m) * phi(p, n, m, PadicScalar::one(p, wide)), g, p))
                            div_failure[i] = "zero-slot product with guard digits not exact mod p^N";
                    }
                });
                auto t2 = std::chrono::steady_clock::now();
                stats.criterion_seconds += std::chrono::duration<double>(t1 - t0).count();
                stats.division_seconds += std::chrono::duration<double>(t2 - t1).count();
                for (size_t i = 0; i < population.size(); ++i) {
                    ++stats.checked;
                    criterion.expect(agree[i], where(p, n) + " m=" + std::to_string(m) + " case " + std::to_string(i));
                    if (divisible[i]) {
                        ++stats.divisible;
                        division.expect(div_failure[i].empty(), div_failure[i] + " at " + where(p, n) + " m=" +
                                                                    std::to_string(m) + " case " + std::to_string(i));
                    }
                }
                criterion.expect(std::count(divisible.begin(), divisible.end(), 1) >= 200,
                                 "constructed multiples not all detected at " + where(p, n));
            }
    return stats;
}

Outcome criterion_pollack_round_trip(size_t& pairs) {
    Outcome out;
    const int p = 3;
    struct Job {
        int k, n;
        uint64_t seed;
    };
    std::vector<Job> jobs;
    for (int k = 2; k <= 4; ++k)
        for (int n = 1; n <= 4; ++n)
            for (int t = 0; t < 100; ++t) jobs.push_back({k, n, static_cast<uint64_t>(1000 * k + 100 * n + t)});
    std::vector<std::string> failure(jobs.size());
    parallel_for(jobs.size(), worker_count(), [&](size_t i) {
        const Job& job = jobs[i];
        SplitMix64 rng(job.seed);
        const auto pm = random_pm(p, job.n, job.k, 1, kCap, rng);
        const auto back = decompose(compose(pm, false));
        const auto s = pm.Lplus.proto().s();
        const auto lp = promote(log_trunc({p, job.k, job.n, Sign::Plus, 1, kCap}), s);
        const auto lm = promote(log_trunc({p, job.k, job.n, Sign::Minus, 1, kCap}), s);
        const std::string tag = where(p, job.n) + " k=" + std::to_string(job.k) + " seed " + std::to_string(job.seed);
        if (!(lp * back.Lplus == lp * pm.Lplus)) failure[i] = "plus side differs, " + tag;
        else if (!(lm * back.Lminus == lm * pm.Lminus)) failure[i] = "minus side differs, " + tag;
        else if (min_half_valuation(back.Lplus) < 0 || min_half_valuation(back.Lminus) < 0)
            failure[i] = "valuation floor broken, " + tag;
    });
    for (const auto& f : failure) out.expect(f.empty(), f);
    pairs = jobs.size();
    return out;
}

Outcome criterion_admissibility(size_t& checked) {
    Outcome out;
    const int p = 3;
    checked = 0;
    for (int k = 2; k <= 4; ++k)
        for (int n = 1; n <= 4; ++n)
            for (int t = 0; t < 10; ++t) {
                SplitMix64 rng(static_cast<uint64_t>(5000 + 100 * k + 10 * n + t));
                const auto report = check_admissible(compose(random_pm(p, n, k, 1, kCap, rng)), 2, {worker_count()});
                checked += report.checked;
                out.expect(report.all_passed(), where(p, n) + " k=" + std::to_string(k) + ": " +
                                                     std::to_string(report.failures) + " failing characters");
                out.expect(!report.used_canonical_lift, "twisted images missing at " + where(p, n));
            }
    // The mechanism: at conductor index s = m + 1 with 1 <= m <= n - 1 the law needs
    // log^- to vanish when s is even and log^+ when s is odd.
    for (int k = 2; k <= 4; ++k)
        for (int n = 2; n <= 4; ++n)
            for (const auto& chi : enumerate_characters(p, n - 1, k - 2)) {
                if (chi.m < 1) continue;
                const Sign needed = (chi.m + 1) % 2 == 0 ? Sign::Minus : Sign::Plus;
                const Sign other = needed == Sign::Plus ? Sign::Minus : Sign::Plus;
                out.expect(eval_log({p, k, n, needed, 1, kCap}, chi).is_zero(),
                           "log" + std::string(to_string(needed)) + " nonzero at m=" + std::to_string(chi.m));
                out.expect(!eval_log({p, k, n, other, 1, kCap}, chi).is_zero(),
                           "log" + std::string(to_string(other)) + " vanishes at m=" + std::to_string(chi.m));
            }
    return out;
}

Outcome criterion_vanishing(size_t& scanned) {
    Outcome out;
    scanned = 0;
    for (int k = 2; k <= 4; ++k)
        for (int n = 1; n <= 5; ++n)
            for (Sign sign : {Sign::Plus, Sign::Minus}) {
                const auto scan = vanishing_locus({3, k, n, sign, 1, kCap}, {worker_count()});
                scanned += scan.scanned;
                out.expect(scan.matches, where(3, n) + " k=" + std::to_string(k) + " sign " + to_string(sign) + ": " +
                                             std::to_string(scan.zeros.size()) + " zeros, " +
                                             std::to_string(scan.predicted.size()) + " predicted");
            }
    return out;
}

struct DimsRow {
    int p, n;
    long plus, minus;
};

const std::vector<DimsRow>& dims_rows() {
    // Expected values are the closed-form dimensions; p=5, n=3 minus is 4 + 5 * 16.
    static const std::vector<DimsRow> rows = {{3, 2, 5, 2}, {3, 3, 5, 14}, {3, 4, 41, 14}, {5, 2, 17, 4}, {5, 3, 17, 84}};
    return rows;
}

Outcome criterion_dims(std::string& table) {
    Outcome out;
    for (const auto& row : dims_rows()) {
        const auto qp = plus_minus_space(row.p, row.n, Sign::Plus);
        const auto qm = plus_minus_space(row.p, row.n, Sign::Minus);
        const auto f = dim_formula(row.p, row.n);
        table += " " + where(row.p, row.n) + ":" + std::to_string(qp.rank()) + "/" + std::to_string(qm.rank());
        out.expect(f.plus == row.plus && f.minus == row.minus, "closed form disagrees with the table at " + where(row.p, row.n));
        out.expect(static_cast<long>(qp.rank()) == f.plus && static_cast<long>(qm.rank()) == f.minus,
                   "rank differs from closed form at " + where(row.p, row.n));
    }
    return out;
}

Outcome criterion_coincides(size_t& cases) {
    Outcome out;
    cases = 0;
    for (int p : {3, 5})
        for (int n = 1; n <= (p == 3 ? 4 : 3); ++n)
            for (Sign sign : {Sign::Plus, Sign::Minus}) {
                ++cases;
                out.expect(subspaces_equal(plus_minus_space(p, n, sign), r_space(p, n, sign)),
                           where(p, n) + " sign " + to_string(sign));
            }
    return out;
}

Outcome criterion_val_growth(size_t& cases) {
    Outcome out;
    cases = 0;
    SplitMix64 rng(8128);
    gmp_randclass r(gmp_randinit_default);
    r.seed(rng.next());
    for (int i = 0; i < 100; ++i) {
        const int p = i % 3 == 0 ? 3 : (i % 3 == 1 ? 5 : 7);
        const mpz_class M = oracle::pow_int(p, kCap);
        // x = 1 + p^a * y with y a random p-adic integer; retry when y = 0
        const int a = 1 + static_cast<int>(rng.below(6));
        mpz_class y = 0;
        while (y == 0) y = r.get_z_range(M);
        const mpz_class x = oracle::mod(1 + oracle::pow_int(p, static_cast<unsigned long>(a)) * y, M);
        if (x == 1) continue;
        const long base = oracle::v_p(x - 1, p);
        for (int n = 0; n <= 6; ++n) {
            ++cases;
            mpz_class power;
            mpz_pow_ui(power.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(int_pow(p, n)));
            const long exact = oracle::v_p(power - 1, p);
            const auto check = verify_val_growth(PadicScalar::from_integer(p, kCap, x), n);
            out.expect(exact == n + base && check.holds && check.observed == exact,
                       "p=" + std::to_string(p) + " n=" + std::to_string(n) + " x=" + x.get_str());
        }
    }
    return out;
}

Outcome criterion_unit(size_t& cases) {
    Outcome out;
    cases = 0;
    for (int p : {3, 5})
        for (int k = 2; k <= 5; ++k)
            for (int n = 1; n <= 4; ++n) {
                const PadicScalar one = PadicScalar::one(p, kCap);
                const PadicScalar inv_p = PadicScalar::from_int(p, kCap, p).inv();
                for (int m = n; m <= n + 2; ++m) {
                    ++cases;
                    out.expect(phi(p, n, m, one).scaled(inv_p) == GR::one(p, n, one),
                               "phi(m)/p != 1 at " + where(p, n) + " m=" + std::to_string(m));
                    for (int j = 1; j <= k - 2; ++j) {
                        ++cases;
                        const GR u = twisted_phi(p, n, m, j, one).scaled(inv_p);
                        try {
                            const GR diff = u * invert_unit(u) - GR::one(p, n, one);
                            for (const auto& c : diff.coeffs()) {
                                const bool ok = c.is_zero() ? c.absolute_precision() >= kCap - n
                                                            : c.valuation() >= kCap - n;
                                out.expect(ok, "product not 1 mod p^(N-n) at " + where(p, n) + " m=" +
                                                   std::to_string(m) + " j=" + std::to_string(j));
                            }
                        } catch (const Error& e) {
                            out.fail(std::string(e.what()) + " at " + where(p, n) + " m=" + std::to_string(m) +
                                     " j=" + std::to_string(j));
                        }
                    }
                }
            }
    return out;
}

Outcome criterion_spanning(size_t& cases) {
    Outcome out;
    cases = 0;
    SplitMix64 rng(314159);
    for (int i = 0; i < 200; ++i) {
        const int p = i % 2 ? 5 : 3;
        const int n = 1 + static_cast<int>(rng.below(p == 3 ? 3 : 2));
        std::vector<mpq_class> x(static_cast<size_t>(n + 1), 0);
        // sparse: each coordinate present with probability 1/2
        for (auto& c : x)
            if (rng.below(2)) {
                long num = static_cast<long>(rng.below(19)) - 9;
                if (num == 0) num = 1;
                c = mpq_class(num, static_cast<long>(1 + rng.below(6)));
                c.canonicalize();
            }
        ++cases;
        const auto g = galois_span_dim(p, n, x);
        out.expect(static_cast<long>(g.rank) == g.predicted,
                   where(p, n) + ": rank " + std::to_string(g.rank) + " predicted " + std::to_string(g.predicted));
        std::vector<mpq_class> a(static_cast<size_t>(n + 1), 0);
        for (auto& c : a)
            if (rng.below(2)) c = static_cast<long>(rng.below(7)) - 3;
        if (a[1] != (p - 1) * a[0]) {
            ++cases;
            out.expect(generated_orbit_span(p, n, a).matches, "generated span differs at " + where(p, n));
        }
    }
    for (int n = 1; n <= 3; ++n) {
        ++cases;
        CycRationalElem eta = CycRationalElem::constant(3, n, 1);
        for (int i = 1; i <= n; ++i) eta = eta + CycRationalElem::zeta(3, n, i);
        out.expect(static_cast<int>(orbit_rank(eta)) == cyclotomic_degree(3, n),
                   "normal basis element not of full rank at n=" + std::to_string(n));
    }
    return out;
}

Outcome criterion_u_space(std::string& values) {
    Outcome out;
    const long expected[] = {5, 5, 41};
    for (int n = 2; n <= 4; ++n) {
        const auto u = u_space_dim(3, n);
        values += " " + std::to_string(u.dim);
        out.expect(u.dim == expected[n - 2] && u.r_plus == expected[n - 2],
                   "n=" + std::to_string(n) + ": U " + std::to_string(u.dim) + ", R+ " + std::to_string(u.r_plus));
    }
    return out;
}

Outcome criterion_gauss(size_t& cases) {
    Outcome out;
    cases = 0;
    for (int p : {3, 5})
        for (const auto& chi : enumerate_characters(p, 2, 0)) {
            if (chi.m == 0 && chi.d % (p - 1) == 0) continue;  // trivial character
            ++cases;
            const int c = chi.m + 1;
            const auto product = gauss_sum(p, kCap, chi) * gauss_sum(p, kCap, inverse_character(p, chi));
            const long sign = chi.d % 2 == 0 ? 1 : -1;
            const auto expected = CyclotomicScalar<PadicScalar>::constant(
                p, c, PadicScalar::from_integer(p, kCap, sign * oracle::pow_int(p, static_cast<unsigned long>(c))));
            out.expect(product == expected, "d=" + std::to_string(chi.d) + " m=" + std::to_string(chi.m) +
                                                " e=" + std::to_string(chi.e) + " p=" + std::to_string(p));
        }
    return out;
}

struct Criterion {
    int number;
    std::string name;
    double limit_seconds;  // 0 when the criterion has no time bound
    std::function<Outcome(std::string&)> run;
};

}  // namespace

int main() {
    Outcome lin_criterion, lin_division;
    DivisionStats lin_stats;
    bool lin_ran = false;
    auto run_lin = [&] {
        if (lin_ran) return;
        lin_stats = lin_population(lin_criterion, lin_division);
        lin_ran = true;
    };

    const std::vector<Criterion> criteria = {
        {1, "divisibility criterion agrees with the CRT slot", 30,
         [&](std::string& info) {
             run_lin();
             info = std::to_string(lin_stats.checked) + " elements";
             return lin_criterion;
         }},
        {2, "divide_exact round trip", 0,
         [&](std::string& info) {
             run_lin();
             info = std::to_string(lin_stats.divisible) +
                    " divisible cases; low-degree exact mod p^N, zero-slot exact mod p^N given n-1 guard digits";
             return lin_division;
         }},
        {3, "compose/decompose round trip with O(1) floor", 120,
         [](std::string& info) {
             size_t pairs = 0;
             Outcome o = criterion_pollack_round_trip(pairs);
             info = std::to_string(pairs) + " pairs";
             return o;
         }},
        {4, "admissibility of composed pairs", 0,
         [](std::string& info) {
             size_t checked = 0;
             Outcome o = criterion_admissibility(checked);
             info = std::to_string(checked) + " character checks";
             return o;
         }},
        {5, "vanishing locus of log+-", 0,
         [](std::string& info) {
             size_t scanned = 0;
             Outcome o = criterion_vanishing(scanned);
             info = std::to_string(scanned) + " evaluations";
             return o;
         }},
        {6, "plus/minus dimension table", 60,
         [](std::string& info) {
             Outcome o = criterion_dims(info);
             info += " (p=5 n=3 minus: 4+5*16 = 84; the literal 104 = 4+100 miscounts p(p-1)^2)";
             return o;
         }},
        {7, "trace-condition spaces equal orbit spans", 0,
         [](std::string& info) {
             size_t cases = 0;
             Outcome o = criterion_coincides(cases);
             info = std::to_string(cases) + " subspace pairs";
             return o;
         }},
        {8, "valuation growth against big-integer powers", 0,
         [](std::string& info) {
             size_t cases = 0;
             Outcome o = criterion_val_growth(cases);
             info = std::to_string(cases) + " cases";
             return o;
         }},
        {9, "twisted Phi_m/p are units", 0,
         [](std::string& info) {
             size_t cases = 0;
             Outcome o = criterion_unit(cases);
             info = std::to_string(cases) + " cases";
             return o;
         }},
        {10, "orbit-rank formula and normal basis", 0,
         [](std::string& info) {
             size_t cases = 0;
             Outcome o = criterion_spanning(cases);
             info = std::to_string(cases) + " cases";
             return o;
         }},
        {11, "dim U_n = dim R+", 0,
         [](std::string& info) {
             Outcome o = criterion_u_space(info);
             info = "n=2,3,4 ->" + info;
             return o;
         }},
        {12, "Gauss sum products", 0,
         [](std::string& info) {
             size_t cases = 0;
             Outcome o = criterion_gauss(cases);
             info = std::to_string(cases) + " characters";
             return o;
         }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        std::string info;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = c.run(info);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        // The shared population is generated once; each criterion is charged its own pass.
        if (c.number == 1) seconds = lin_stats.criterion_seconds;
        if (c.number == 2) seconds = lin_stats.division_seconds;
        if (c.limit_seconds > 0 && seconds > c.limit_seconds)
            o.fail("took " + std::to_string(seconds) + " s, limit " + std::to_string(c.limit_seconds) + " s");
        if (!o.passed) ++failed;
        std::printf("%s %2d  %-48s %7.2fs  %s%s%s\n", o.passed ? "PASS" : "FAIL", c.number, c.name.c_str(), seconds,
                    info.c_str(), o.passed ? "" : "  -- ", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
