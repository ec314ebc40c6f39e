#include "iwa/half_logs.hpp"

namespace iwa {

std::vector<int> omega_factor_levels(int n, Sign sign) {
    std::vector<int> levels;
    for (int t = sign == Sign::Plus ? 2 : 1; t < n; t += 2) levels.push_back(t);
    return levels;
}

GroupRingElem<PadicScalar> omega_tilde(int p, int n, Sign sign, int cap) {
    const auto one = PadicScalar::one(p, cap);
    auto f = GroupRingElem<PadicScalar>::one(p, n, one);
    for (int t : omega_factor_levels(n, sign)) f = f * phi(p, n, t, one);
    return f;
}

GroupRingElem<PadicScalar> omega_poly(int p, int n, Sign sign, int cap) {
    const auto count = static_cast<int64_t>(omega_factor_levels(n, sign).size());
    return omega_tilde(p, n, sign, cap).scaled(PadicScalar::one(p, cap).mul_p_power(-count));
}

GroupRingElem<PadicScalar> log_trunc(const HalfLogParams& params) { return log_trunc_twisted(params, 0); }

GroupRingElem<PadicScalar> log_trunc_twisted(const HalfLogParams& params, int r) {
    if (params.k < 2) throw Error(ErrorKind::InvalidResidue, "weight k must be >= 2");
    const int p = params.p;
    const auto omega = omega_poly(p, params.n, params.sign, params.cap);
    auto f = GroupRingElem<PadicScalar>::monomial(p, params.n, 0, 0,
                                                  PadicScalar::one(p, params.cap).mul_p_power(1 - params.k));
    for (int j = 0; j <= params.k - 2; ++j) f = f * twist_gamma(omega, j - r);
    return f;
}

CyclotomicScalar<PadicScalar> eval_log(const HalfLogParams& params, const CharacterSpec& chi) {
    const int p = params.p;
    validate_character(p, params.n, chi);
    const int cap = params.cap;
    const auto one = PadicScalar::one(p, cap);
    const auto u = gamma_unit(p, cap);
    const long order = int_pow(p, chi.m);
    auto value = CyclotomicScalar<PadicScalar>::constant(p, chi.m, one.mul_p_power(1 - params.k));
    for (int j = 0; j <= params.k - 2; ++j) {
        for (int t : omega_factor_levels(params.n, params.sign)) {
            const long step = int_pow(p, t - 1);
            const PadicScalar base = u.pow((chi.r - j) * step);
            std::vector<PadicScalar> poly(static_cast<size_t>(order), PadicScalar::zero(p, cap));
            PadicScalar w = one;
            for (int i = 0; i < p; ++i) {
                poly[static_cast<size_t>((chi.e * i * step) % order)] += w;
                w = w * base;
            }
            auto factor = CyclotomicScalar<PadicScalar>::reduce(p, chi.m, std::move(poly));
            value = value * factor.scaled(one.mul_p_power(-1));
        }
    }
    return value;
}

bool predicted_zero(const HalfLogParams& params, const CharacterSpec& chi) {
    if (chi.m < 1 || chi.m > params.n - 1) return false;
    return (chi.m % 2 == 0) == (params.sign == Sign::Plus);
}

VanishingScan vanishing_locus(const HalfLogParams& params, const ScanOptions& options) {
    const auto chars = enumerate_characters(params.p, params.n - 1, params.k - 2);
    std::vector<char> is_zero(chars.size(), 0);
    parallel_for(chars.size(), options.threads,
                 [&](size_t i) { is_zero[i] = eval_log(params, chars[i]).is_zero() ? 1 : 0; });
    VanishingScan scan;
    scan.scanned = chars.size();
    for (size_t i = 0; i < chars.size(); ++i) {
        if (is_zero[i]) scan.zeros.push_back(chars[i]);
        if (predicted_zero(params, chars[i])) scan.predicted.push_back(chars[i]);
    }
    scan.matches = scan.zeros == scan.predicted;
    return scan;
}

}  // namespace iwa
