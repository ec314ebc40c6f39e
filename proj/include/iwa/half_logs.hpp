#pragma once

#include <vector>

#include "iwa/cyclotomic_eval.hpp"
#include "iwa/group_ring.hpp"
#include "iwa/parallel.hpp"
#include "iwa/sign.hpp"

namespace iwa {

struct HalfLogParams {
    int p = 3;
    int k = 2;
    int n = 1;
    Sign sign = Sign::Plus;
    long eps = 1;
    int cap = 40;
};

/// Levels t of the factors Phi_t(gamma)/p in omega_n^{+-}:
/// even t = 2m with 2m < n (plus), odd t = 2m-1 with 2m-1 < n (minus).
std::vector<int> omega_factor_levels(int n, Sign sign);

/// prod_t Phi_t(gamma) as a level-n element; 1 for the empty product.
GroupRingElem<PadicScalar> omega_tilde(int p, int n, Sign sign, int cap);

/// prod_t Phi_t(gamma)/p.
GroupRingElem<PadicScalar> omega_poly(int p, int n, Sign sign, int cap);

/// p^{1-k} prod_{j=0}^{k-2} omega_n(u^{-j} gamma), normalizing unit set to 1.
GroupRingElem<PadicScalar> log_trunc(const HalfLogParams& params);

/// Level-n image of Tw_r(log): p^{1-k} prod_j omega_n(u^{r-j} gamma).
/// Each factor is a polynomial of degree < p^{n-1}, so twisting before the
/// product is exact.
GroupRingElem<PadicScalar> log_trunc_twisted(const HalfLogParams& params, int r);

/// chi^r theta(log) computed factor by factor:
/// p^{1-k} prod_j prod_t Phi_t(u^{r-j} zeta_{p^m}^e)/p.
CyclotomicScalar<PadicScalar> eval_log(const HalfLogParams& params, const CharacterSpec& chi);

/// Zero iff 1 <= m <= n-1 with m even (plus) or odd (minus).
bool predicted_zero(const HalfLogParams& params, const CharacterSpec& chi);

struct VanishingScan {
    std::vector<CharacterSpec> zeros;
    std::vector<CharacterSpec> predicted;
    size_t scanned = 0;
    bool matches = false;
};

/// Evaluates log at every character with m <= n-1 and 0 <= r <= k-2.
VanishingScan vanishing_locus(const HalfLogParams& params, const ScanOptions& options = {});

}  // namespace iwa
