#pragma once

#include <vector>

#include "iwa/cyclotomic_scalar.hpp"
#include "iwa/group_ring.hpp"

namespace iwa {

/// The character chi^r theta of G_infinity.
///
/// theta restricted to Delta is omega_T^d, theta(gamma) = zeta_{p^m}^e, and
/// chi^r is the r-th power of the cyclotomic character (chi(gamma) = u).
struct CharacterSpec {
    int d = 0;
    int m = 0;
    long e = 1;
    int r = 0;

    bool operator==(const CharacterSpec&) const = default;
};

/// Throws BadConductor unless chi is a valid character for level-n data.
void validate_character(int p, int n, const CharacterSpec& chi);

/// theta factors through G_s but not G_{s-1}; 1 for characters trivial on Gamma.
int conductor_index(const CharacterSpec& chi);

/// All (d, m, e, r) with m <= max_m, 0 <= r <= max_r and 1 <= e < p^m prime to p.
std::vector<CharacterSpec> enumerate_characters(int p, int max_m, int max_r);

/// theta^{-1}: (-d, m, -e), twist exponent kept.
CharacterSpec inverse_character(int p, const CharacterSpec& chi);

/// sum_{r', sigma} c_{r',sigma} omega_T(g)^{sigma(d+r)} u^{r r'} zeta_{p^m}^{e r'}.
///
/// For r = 0 this is a ring homomorphism E[G_n] -> E(zeta_{p^m}). For r >= 1 it
/// evaluates the canonical lift of f, which is only multiplicative on products
/// that do not wrap past gamma^{p^{n-1}}.
template <class S>
CyclotomicScalar<S> eval_char(const GroupRingElem<S>& f, const CharacterSpec& chi);

/// Gauss sum of theta (r ignored) over (Z/p^c)^x, c = m + 1. Lives at level c.
///
/// a = omega_T(g)^sigma u^{r'} mod p^c is sent to omega_T(g)^{sigma d} zeta_{p^m}^{e r'}.
CyclotomicScalar<PadicScalar> gauss_sum(int p, int cap, const CharacterSpec& chi);

/// theta(-1) = (-1)^d.
int character_parity(const CharacterSpec& chi);

extern template CyclotomicScalar<PadicScalar> eval_char(const GroupRingElem<PadicScalar>&, const CharacterSpec&);
extern template CyclotomicScalar<QuadExtScalar> eval_char(const GroupRingElem<QuadExtScalar>&, const CharacterSpec&);

}  // namespace iwa
