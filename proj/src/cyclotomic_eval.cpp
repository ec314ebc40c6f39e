#include "iwa/cyclotomic_eval.hpp"

#include <numeric>
#include <string>

namespace iwa {

namespace {

long mod(long a, long n) { return ((a % n) + n) % n; }

std::string describe(const CharacterSpec& chi) {
    return "(d=" + std::to_string(chi.d) + ", m=" + std::to_string(chi.m) + ", e=" + std::to_string(chi.e) +
           ", r=" + std::to_string(chi.r) + ")";
}

}  // namespace

void validate_character(int p, int n, const CharacterSpec& chi) {
    auto fail = [&](const std::string& why) {
        throw Error(ErrorKind::BadConductor, "character " + describe(chi) + ": " + why);
    };
    if (chi.d < 0 || chi.d >= p - 1) fail("Delta exponent outside [0, p-1)");
    if (chi.m < 0) fail("negative Gamma-conductor index");
    if (chi.m > n - 1) fail("Gamma-order exceeds p^{n-1} at level " + std::to_string(n));
    if (chi.m == 0 && chi.e != 1) fail("e must be 1 when theta is trivial on Gamma");
    if (chi.e % p == 0) fail("e divisible by p");
    if (chi.r < 0) fail("negative twist exponent");
}

int conductor_index(const CharacterSpec& chi) { return chi.m == 0 ? 1 : chi.m + 1; }

std::vector<CharacterSpec> enumerate_characters(int p, int max_m, int max_r) {
    std::vector<CharacterSpec> out;
    for (int r = 0; r <= max_r; ++r)
        for (int m = 0; m <= max_m; ++m) {
            const long order = int_pow(p, m);
            for (int d = 0; d < p - 1; ++d)
                for (long e = 1; e <= std::max(order - 1, 1L); ++e) {
                    if (e % p == 0) continue;
                    out.push_back({d, m, e, r});
                }
        }
    return out;
}

CharacterSpec inverse_character(int p, const CharacterSpec& chi) {
    const long order = int_pow(p, chi.m);
    return {static_cast<int>(mod(-chi.d, p - 1)), chi.m, chi.m == 0 ? 1 : mod(-chi.e, order), chi.r};
}

int character_parity(const CharacterSpec& chi) { return chi.d % 2 == 0 ? 1 : -1; }

template <class S>
CyclotomicScalar<S> eval_char(const GroupRingElem<S>& f, const CharacterSpec& chi) {
    const int p = f.prime();
    validate_character(p, f.level(), chi);
    const int cap = scalar_cap(f.proto());
    const auto omega = delta_character_table(p, cap);
    const long order = int_pow(p, chi.m);
    const PadicScalar u_r = gamma_unit(p, cap).pow(chi.r);

    std::vector<S> poly(static_cast<size_t>(order), f.proto());
    PadicScalar twist = PadicScalar::one(p, cap);  // u^{r r'}
    for (int rr = 0; rr < f.gamma_order(); ++rr) {
        S acc = f.proto();
        for (int s = 0; s < p - 1; ++s) {
            const S& c = f.at(s, rr);
            if (c.is_zero()) continue;
            acc += c.scaled(omega[static_cast<size_t>(mod(static_cast<long>(s) * (chi.d + chi.r), p - 1))]);
        }
        if (!acc.is_zero()) poly[static_cast<size_t>(mod(chi.e * rr, order))] += acc.scaled(twist);
        twist = twist * u_r;
    }
    return CyclotomicScalar<S>::reduce(p, chi.m, std::move(poly));
}

CyclotomicScalar<PadicScalar> gauss_sum(int p, int cap, const CharacterSpec& chi) {
    if (chi.d < 0 || chi.d >= p - 1 || chi.m < 0 || chi.e % p == 0 || (chi.m == 0 && chi.e != 1))
        throw Error(ErrorKind::BadConductor, "invalid character " + describe(chi));
    if (chi.d == 0 && chi.m == 0) throw Error(ErrorKind::TrivialCharacter, "Gauss sum of the trivial character");
    const int c = chi.m + 1;
    const long modulus = int_pow(p, c);
    const long order = int_pow(p, chi.m);
    const auto omega = delta_character_table(p, cap);
    const auto g = teichmuller(p, cap, primitive_root(p));
    const auto u = gamma_unit(p, cap);

    std::vector<PadicScalar> poly(static_cast<size_t>(modulus), PadicScalar::zero(p, cap));
    PadicScalar delta_part = PadicScalar::one(p, cap);
    for (int s = 0; s < p - 1; ++s) {
        PadicScalar a = delta_part;
        for (long rr = 0; rr < order; ++rr) {
            // a = omega_T(g)^s u^rr; only its residue mod p^c matters for zeta_{p^c}^a.
            const long residue = a.residue(c).get_si();
            // zeta_{p^m} = zeta_{p^c}^p.
            const long exponent = mod(residue + p * chi.e * rr, modulus);
            poly[static_cast<size_t>(exponent)] += omega[static_cast<size_t>(mod(static_cast<long>(s) * chi.d, p - 1))];
            a = a * u;
        }
        delta_part = delta_part * g;
    }
    return CyclotomicScalar<PadicScalar>::reduce(p, c, std::move(poly));
}

template CyclotomicScalar<PadicScalar> eval_char(const GroupRingElem<PadicScalar>&, const CharacterSpec&);
template CyclotomicScalar<QuadExtScalar> eval_char(const GroupRingElem<QuadExtScalar>&, const CharacterSpec&);

}  // namespace iwa
