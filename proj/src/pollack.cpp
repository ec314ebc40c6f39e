#include "iwa/pollack.hpp"

#include <string>

namespace iwa {

namespace {

HalfLogParams params_for(int p, int n, int k, Sign sign, long eps, int cap) { return {p, k, n, sign, eps, cap}; }

const PadicScalar& alpha_square_of(const QuadGroupRing& f) { return f.proto().s(); }

void check_context(const QuadGroupRing& f, int k, long eps) {
    const PadicScalar& s = alpha_square_of(f);
    const PadicScalar expect = pair_alpha_square(f.prime(), s.cap(), k, eps);
    if (!(s == expect))
        throw Error(ErrorKind::ShapeMismatch,
                    "coefficients use alpha^2 = " + s.to_string() + ", expected -eps p^{k-1} = " + expect.to_string());
}

QuadGroupRing map_coeffs(const QuadGroupRing& f, auto&& op) {
    std::vector<QuadExtScalar> c;
    c.reserve(f.coeffs().size());
    for (const auto& x : f.coeffs()) c.push_back(op(x));
    return QuadGroupRing(f.prime(), f.level(), std::move(c));
}

// (L_1 +- L_2) side of compose, in level-n form.
QuadGroupRing combine(const GroupRingElem<PadicScalar>& log_plus, const QuadGroupRing& Lplus,
                      const GroupRingElem<PadicScalar>& log_minus, const QuadGroupRing& Lminus, bool negate_alpha) {
    const PadicScalar& s = alpha_square_of(Lplus);
    QuadExtScalar alpha = QuadExtScalar::alpha(s);
    if (negate_alpha) alpha = -alpha;
    return promote(log_plus, s) * Lplus + (promote(log_minus, s) * Lminus).scaled(alpha);
}

QuadGroupRing extract_side(const QuadGroupRing& X, int k, Sign sign, const DecomposeOptions& options,
                           std::vector<int>& levels) {
    const int p = X.prime();
    const int n = X.level();
    const int cap = X.proto().base_component().cap();
    const PadicScalar& s = alpha_square_of(X);
    levels = omega_factor_levels(n, sign);
    const auto c = static_cast<int64_t>(levels.size());

    // log = p^{(1-k)(1+c)} prod_{j,t} Phi_t(u^{-j} gamma): clear the p-power first.
    QuadGroupRing Y = X.scaled_base(PadicScalar::one(p, cap).mul_p_power((k - 1) * (1 + c)));

    if (k > 2 && !levels.empty()) {
        const auto one = PadicScalar::one(p, cap);
        auto twisted = GroupRingElem<PadicScalar>::one(p, n, one);
        for (int j = 1; j <= k - 2; ++j)
            for (int t : levels) twisted = twisted * twisted_phi(p, n, t, j, one);
        Y = Y * promote(invert_unit(twisted), s);
    }
    for (int t : levels) {
        if (!divisible_by_phi(Y, t))
            throw Error(ErrorKind::NotDecomposable, std::string("L1 ") + (sign == Sign::Plus ? "+" : "-") +
                                                        " L2 is not divisible by Phi_" + std::to_string(t) +
                                                        "(gamma); the pair is not admissible");
        Y = divide_exact(Y, t, QuotientRep::LowDegree);
    }
    const int64_t v = min_half_valuation(Y);
    if (v < 2 * options.floor)
        throw Error(ErrorKind::UnboundedResult, std::string("L") + (sign == Sign::Plus ? "+" : "-") +
                                                    " has a coefficient of valuation " + std::to_string(v) +
                                                    "/2 below the floor " + std::to_string(options.floor));
    return Y;
}

}  // namespace

PadicScalar pair_alpha_square(int p, int cap, int k, long eps) { return QuadExtScalar::alpha_square(p, cap, k, eps); }

int64_t min_half_valuation(const QuadGroupRing& f) {
    int64_t v = PadicScalar::kInfinity;
    for (const auto& c : f.coeffs()) v = std::min(v, c.half_valuation());
    return v;
}

AdmissiblePair compose(const PMDecomposition& pm, bool with_twists) {
    pm.Lplus.check_shape(pm.Lminus);
    check_context(pm.Lplus, pm.k, pm.eps);
    check_context(pm.Lminus, pm.k, pm.eps);
    const int p = pm.prime();
    const int n = pm.level();
    const int cap = pm.Lplus.proto().base_component().cap();
    const auto plus = params_for(p, n, pm.k, Sign::Plus, pm.eps, cap);
    const auto minus = params_for(p, n, pm.k, Sign::Minus, pm.eps, cap);

    const auto log_plus = log_trunc(plus);
    const auto log_minus = log_trunc(minus);
    AdmissiblePair pair{pm.k, pm.eps, combine(log_plus, pm.Lplus, log_minus, pm.Lminus, false),
                        combine(log_plus, pm.Lplus, log_minus, pm.Lminus, true), {}};
    if (with_twists) {
        for (int r = 1; r <= pm.k - 2; ++r) {
            const auto tp = log_trunc_twisted(plus, r);
            const auto tm = log_trunc_twisted(minus, r);
            const auto Lp = twist_full(pm.Lplus, r);
            const auto Lm = twist_full(pm.Lminus, r);
            pair.twists.push_back({r, combine(tp, Lp, tm, Lm, false), combine(tp, Lp, tm, Lm, true)});
        }
    }
    return pair;
}

PMDecomposition decompose(const AdmissiblePair& pair, const DecomposeOptions& options) {
    pair.L1.check_shape(pair.L2);
    check_context(pair.L1, pair.k, pair.eps);
    check_context(pair.L2, pair.k, pair.eps);
    const int p = pair.prime();
    const int cap = pair.L1.proto().base_component().cap();
    const PadicScalar half = PadicScalar::from_int(p, cap, 2).inv();

    const QuadGroupRing sum = (pair.L1 + pair.L2).scaled_base(half);
    const QuadGroupRing diff =
        map_coeffs((pair.L1 - pair.L2).scaled_base(half), [](const QuadExtScalar& x) { return x.divided_by_alpha(); });

    PMDecomposition pm{pair.k, pair.eps, pair.L1, pair.L2, {}, {}};
    pm.Lplus = extract_side(sum, pair.k, Sign::Plus, options, pm.plus_levels);
    pm.Lminus = extract_side(diff, pair.k, Sign::Minus, options, pm.minus_levels);
    return pm;
}

AdmissibleReport check_admissible(const AdmissiblePair& pair, int s_min, const ScanOptions& options) {
    pair.L1.check_shape(pair.L2);
    const int p = pair.prime();
    const int n = pair.level();
    const PadicScalar& s = alpha_square_of(pair.L1);
    const QuadExtScalar alpha = QuadExtScalar::alpha(s);

    const auto chars = enumerate_characters(p, n - 1, pair.k - 2);
    AdmissibleReport report;
    report.entries.resize(chars.size());
    parallel_for(chars.size(), options.threads, [&](size_t i) {
        const CharacterSpec& chi = chars[i];
        AdmissibleEntry entry;
        entry.chi = chi;
        entry.conductor_index = conductor_index(chi);
        entry.informational = entry.conductor_index < s_min;

        const QuadGroupRing* L1 = &pair.L1;
        const QuadGroupRing* L2 = &pair.L2;
        CharacterSpec eval_at = chi;
        if (chi.r >= 1) {
            for (const auto& t : pair.twists)
                if (t.r == chi.r) {
                    L1 = &t.L1;
                    L2 = &t.L2;
                    eval_at.r = 0;
                    entry.used_twisted_image = true;
                }
        }
        const int cond = entry.conductor_index;
        const auto lhs = eval_char(*L1, eval_at).scaled(alpha.pow(cond));
        const auto rhs = eval_char(*L2, eval_at).scaled((-alpha).pow(cond));
        entry.passed = lhs == rhs;
        report.entries[i] = entry;
    });
    for (const auto& e : report.entries) {
        if (e.chi.r >= 1 && !e.used_twisted_image) report.used_canonical_lift = true;
        if (e.informational) continue;
        ++report.checked;
        if (!e.passed) ++report.failures;
    }
    return report;
}

PMDecomposition random_pm(int p, int n, int k, long eps, int cap, SplitMix64& rng, long bound) {
    if (bound < 1) throw Error(ErrorKind::DegenerateInput, "coefficient bound must be positive");
    const PadicScalar s = pair_alpha_square(p, cap, k, eps);
    auto draw = [&] {
        std::vector<QuadExtScalar> c;
        c.reserve(static_cast<size_t>((p - 1) * int_pow(p, n - 1)));
        for (long i = 0; i < (p - 1) * int_pow(p, n - 1); ++i) {
            const long v = static_cast<long>(rng.below(static_cast<uint64_t>(2 * bound - 1))) - (bound - 1);
            c.push_back(QuadExtScalar::from_base(PadicScalar::from_int(p, cap, v), s));
        }
        return QuadGroupRing(p, n, std::move(c));
    };
    QuadGroupRing plus = draw();
    QuadGroupRing minus = draw();
    return {k, eps, std::move(plus), std::move(minus), {}, {}};
}

}  // namespace iwa
