#include "iwa/verify.hpp"

#include <functional>
#include <map>
#include <utility>

#include "iwa/error.hpp"
#include "iwa/pollack.hpp"
#include "iwa/qpn_lab.hpp"

namespace iwa {

namespace {

struct Check {
    Check(std::string n, std::string what) : name(std::move(n)), property(std::move(what)) {}

    std::string name;
    std::string property;
    size_t cases = 0;
    size_t failures = 0;
    std::string detail;

    void expect(bool ok, const std::string& what) {
        ++cases;
        if (ok) return;
        if (failures++ == 0) detail = what;
    }

    Json to_json() const {
        Json j = {{"name", name}, {"property", property}, {"passed", failures == 0 && cases > 0}, {"cases", cases}};
        if (failures) j["failures"] = failures;
        if (!detail.empty()) j["detail"] = detail;
        return j;
    }
};

Json finish(const std::string& suite, const std::string& checks, const std::vector<Check>& results) {
    Json list = Json::array();
    bool passed = true;
    for (const auto& c : results) {
        list.push_back(c.to_json());
        passed = passed && c.failures == 0 && c.cases > 0;
    }
    return {{"suite", suite}, {"checks", checks}, {"passed", passed}, {"results", list}};
}

std::string tag(int p, int n) { return "p=" + std::to_string(p) + " n=" + std::to_string(n); }

GroupRingElem<PadicScalar> random_element(SplitMix64& rng, int p, int n, int cap, long bound) {
    std::vector<PadicScalar> c;
    const long size = (p - 1) * int_pow(p, n - 1);
    for (long i = 0; i < size; ++i)
        c.push_back(PadicScalar::from_int(p, cap, static_cast<long>(rng.below(static_cast<uint64_t>(2 * bound + 1))) - bound));
    return GroupRingElem<PadicScalar>(p, n, std::move(c));
}

Json suite_lin(const VerifyConfig& cfg) {
    SplitMix64 rng(cfg.seed);
    Check criterion{"divisibility_criterion", "Phi_m(gamma) | f exactly when the m-th CRT slot of f vanishes"};
    Check division{"division_round_trip", "divide_exact(f, m) * Phi_m(gamma) == f for every divisible f"};
    for (int n = 1; n <= cfg.n; ++n)
        for (int m = 1; m < n; ++m) {
            const auto ph = phi(cfg.p, n, m, PadicScalar::one(cfg.p, cfg.cap));
            for (int t = 0; t < 40; ++t) {
                auto f = random_element(rng, cfg.p, n, cfg.cap, 9);
                if (t % 2) f = ph * f;
                bool slot_zero = true;
                for (const auto& c : crt_component(f, m)) slot_zero = slot_zero && c.is_zero();
                const bool divisible = divisible_by_phi(f, m);
                criterion.expect(divisible == slot_zero, tag(cfg.p, n) + " m=" + std::to_string(m));
                if (divisible)
                    for (auto rep : {QuotientRep::ZeroSlot, QuotientRep::LowDegree})
                        division.expect(divide_exact(f, m, rep) * ph == f, tag(cfg.p, n) + " m=" + std::to_string(m));
            }
        }
    return finish("lin", "divisibility by Phi_m(gamma) via b-sums, checked against the CRT decomposition",
                  {criterion, division});
}

Json suite_padic(const VerifyConfig& cfg) {
    SplitMix64 rng(cfg.seed);
    Check growth{"valuation_growth", "v_p(x^{p^n} - 1) = n + v_p(x - 1) for x in 1 + pZ_p, x != 1"};
    const int p = cfg.p;
    for (int t = 0; t < 100; ++t) {
        // x = 1 + p^a * b with b prime to p
        const int a = 1 + static_cast<int>(rng.below(4));
        long b = 1 + static_cast<long>(rng.below(1000));
        if (b % p == 0) ++b;
        mpz_class x = prime_power(static_cast<unsigned>(p), static_cast<unsigned>(a));
        x = x * b + 1;
        for (int n = 0; n <= 6; ++n) {
            mpz_class power;
            mpz_pow_ui(power.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(int_pow(p, n)));
            power -= 1;
            const long exact = static_cast<long>(strip_prime(power, static_cast<unsigned>(p)));
            const auto check = verify_val_growth(PadicScalar::from_integer(p, cfg.cap, x), n);
            growth.expect(check.holds && check.observed == exact && exact == n + a,
                          "x = " + x.get_str() + " n=" + std::to_string(n));
        }
    }
    return finish("padic", "valuation growth of p-power maps on principal units, against big-integer powers", {growth});
}

Json suite_dims(const VerifyConfig& cfg) {
    Check formula{"dimension_formula", "dim Q^+- from the trace conditions equals the closed-form dimension"};
    Check coincide{"trace_vs_orbit_spaces", "trace-condition spaces equal the root-of-unity orbit spans R^+-"};
    Check complement{"plus_minus_complement", "Q^+ cap Q^- = Q and dim Q^+ + dim Q^- = phi(p^n) + 1"};
    Check u_space{"u_space_dimension", "dim U_n (exact constraint rank) equals dim R^+"};
    Json table = Json::array();
    for (int n = 1; n <= cfg.n; ++n) {
        const auto qp = plus_minus_space(cfg.p, n, Sign::Plus);
        const auto qm = plus_minus_space(cfg.p, n, Sign::Minus);
        const auto rp = r_space(cfg.p, n, Sign::Plus);
        const auto rm = r_space(cfg.p, n, Sign::Minus);
        const auto f = dim_formula(cfg.p, n);
        formula.expect(static_cast<long>(qp.rank()) == f.plus && static_cast<long>(qm.rank()) == f.minus,
                       tag(cfg.p, n) + ": ranks " + std::to_string(qp.rank()) + "/" + std::to_string(qm.rank()) +
                           ", formula " + std::to_string(f.plus) + "/" + std::to_string(f.minus));
        coincide.expect(subspaces_equal(qp, rp) && subspaces_equal(qm, rm), tag(cfg.p, n));
        complement.expect(intersection_dim(qp, qm) == 1 &&
                              static_cast<int>(qp.rank() + qm.rank()) == cyclotomic_degree(cfg.p, n) + 1,
                          tag(cfg.p, n));
        Json row = {{"n", n}, {"Qplus", qp.rank()}, {"Qminus", qm.rank()}, {"Rplus", rp.rank()}, {"Rminus", rm.rank()}};
        if (n >= 2) {
            const auto u = u_space_dim(cfg.p, n);
            u_space.expect(u.matches, tag(cfg.p, n) + ": U_n " + std::to_string(u.dim) + " vs R^+ " +
                                          std::to_string(u.r_plus));
            row["U"] = u.dim;
        }
        table.push_back(row);
    }
    Json out = finish("dims", "dimensions of the plus/minus subspaces of Q(zeta_{p^n})",
                      {formula, coincide, complement, u_space});
    out["table"] = table;
    return out;
}

Json suite_vanish(const VerifyConfig& cfg) {
    Check locus{"vanishing_locus", "chi^r theta(log^+-) = 0 exactly at 1 <= m <= n-1 of parity even (+) / odd (-)"};
    for (int k = 2; k <= cfg.k; ++k)
        for (int n = 1; n <= cfg.n; ++n)
            for (Sign sign : {Sign::Plus, Sign::Minus}) {
                const auto scan = vanishing_locus({cfg.p, k, n, sign, cfg.eps, cfg.cap}, cfg.scan);
                locus.expect(scan.matches, tag(cfg.p, n) + " k=" + std::to_string(k) + " sign " + to_string(sign));
            }
    return finish("vanish", "zero set of the truncated half-logarithms", {locus});
}

Json suite_roundtrip(const VerifyConfig& cfg) {
    SplitMix64 rng(cfg.seed);
    Check trip{"compose_decompose", "log^+- * decompose(compose(L^+, L^-)) == log^+- * L^+-"};
    Check bounded{"bounded_output", "decompose returns integral L^+- (valuation floor 0)"};
    for (int k = 2; k <= cfg.k; ++k)
        for (int n = 1; n <= cfg.n; ++n)
            for (int t = 0; t < 5; ++t) {
                const auto pm = random_pm(cfg.p, n, k, cfg.eps, cfg.cap, rng);
                const auto back = decompose(compose(pm, false));
                const auto s = pm.Lplus.proto().s();
                const auto lp = promote(log_trunc({cfg.p, k, n, Sign::Plus, cfg.eps, cfg.cap}), s);
                const auto lm = promote(log_trunc({cfg.p, k, n, Sign::Minus, cfg.eps, cfg.cap}), s);
                const std::string where = tag(cfg.p, n) + " k=" + std::to_string(k);
                trip.expect(lp * back.Lplus == lp * pm.Lplus && lm * back.Lminus == lm * pm.Lminus, where);
                bounded.expect(min_half_valuation(back.Lplus) >= 0 && min_half_valuation(back.Lminus) >= 0, where);
            }
    return finish("roundtrip", "compose/decompose of (L^+, L^-) through (L_alpha, L_-alpha)", {trip, bounded});
}

Json suite_admissible(const VerifyConfig& cfg) {
    SplitMix64 rng(cfg.seed);
    Check law{"interpolation_law", "alpha^s chi^r theta(L_alpha) = (-alpha)^s chi^r theta(L_-alpha), 2 <= s <= n"};
    for (int k = 2; k <= cfg.k; ++k)
        for (int n = 1; n <= cfg.n; ++n) {
            const auto report = check_admissible(compose(random_pm(cfg.p, n, k, cfg.eps, cfg.cap, rng)), 2, cfg.scan);
            law.expect(report.all_passed() && !report.used_canonical_lift,
                       tag(cfg.p, n) + " k=" + std::to_string(k) + ": " + std::to_string(report.failures) +
                           " failures of " + std::to_string(report.checked));
        }
    return finish("admissible", "admissibility of composed pairs at every character", {law});
}

const std::map<std::string, std::function<Json(const VerifyConfig&)>>& suites() {
    static const std::map<std::string, std::function<Json(const VerifyConfig&)>> table = {
        {"lin", suite_lin},           {"padic", suite_padic},         {"dims", suite_dims},
        {"vanish", suite_vanish},     {"roundtrip", suite_roundtrip}, {"admissible", suite_admissible},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"all", "lin", "padic", "dims", "vanish", "roundtrip", "admissible"};
    return names;
}

Json run_suite(const std::string& suite, const VerifyConfig& config) {
    if (suite == "all") {
        Json nested = Json::array();
        bool passed = true;
        for (const auto& name : suite_names()) {
            if (name == "all") continue;
            Json r = suites().at(name)(config);
            passed = passed && r["passed"].get<bool>();
            nested.push_back(std::move(r));
        }
        return {{"suite", "all"}, {"checks", "every suite"}, {"passed", passed}, {"suites", nested}};
    }
    auto it = suites().find(suite);
    if (it == suites().end()) throw Error(ErrorKind::MalformedInput, "unknown suite: " + suite);
    return it->second(config);
}

}  // namespace iwa
