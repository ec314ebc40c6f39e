#pragma once

#include <vector>

#include "iwa/cyclotomic_eval.hpp"
#include "iwa/group_ring.hpp"
#include "iwa/half_logs.hpp"
#include "iwa/rng.hpp"

namespace iwa {

using QuadGroupRing = GroupRingElem<QuadExtScalar>;

/// Level-n image of Tw_r(L_1), Tw_r(L_2) for one twist exponent r >= 1.
struct TwistedImage {
    int r = 0;
    QuadGroupRing L1;
    QuadGroupRing L2;
};

/// (L_{alpha}, L_{-alpha}) over Q_p(alpha), alpha^2 = -eps p^{k-1}.
struct AdmissiblePair {
    int k = 2;
    long eps = 1;
    QuadGroupRing L1;
    QuadGroupRing L2;
    /// Optional; level-n data alone does not determine chi^r theta for r >= 1.
    std::vector<TwistedImage> twists;

    int prime() const { return L1.prime(); }
    int level() const { return L1.level(); }
};

struct PMDecomposition {
    int k = 2;
    long eps = 1;
    QuadGroupRing Lplus;
    QuadGroupRing Lminus;
    /// Levels t whose Phi_t(gamma) was divided out on each side; the
    /// quotient is determined only modulo their annihilators.
    std::vector<int> plus_levels;
    std::vector<int> minus_levels;

    int prime() const { return Lplus.prime(); }
    int level() const { return Lplus.level(); }
};

/// alpha^2 for a weight/epsilon context at the given precision.
PadicScalar pair_alpha_square(int p, int cap, int k, long eps);

/// L_i = log^+ L^+ + alpha_i log^- L^-, alpha_1 = alpha, alpha_2 = -alpha.
/// With `with_twists`, also records Tw_r(L_i) for 1 <= r <= k-2.
AdmissiblePair compose(const PMDecomposition& pm, bool with_twists = true);

struct DecomposeOptions {
    /// Coefficients of L^+- must have valuation >= floor (the O(1) check).
    int64_t floor = 0;
};

/// Inverse of compose: L^+ = (L1 + L2)/(2 log^+), L^- = (L1 - L2)/(2 alpha log^-).
/// Throws NotDecomposable when some Phi_t(gamma) does not divide, and
/// UnboundedResult when the quotient breaks the integrality floor.
PMDecomposition decompose(const AdmissiblePair& pair, const DecomposeOptions& options = {});

struct AdmissibleEntry {
    CharacterSpec chi;
    int conductor_index = 0;
    bool passed = false;
    bool informational = false;   // conductor index below s_min
    bool used_twisted_image = false;
};

struct AdmissibleReport {
    std::vector<AdmissibleEntry> entries;
    size_t checked = 0;
    size_t failures = 0;
    /// Some r >= 1 entry had no twisted image and fell back to the canonical lift.
    bool used_canonical_lift = false;
    bool all_passed() const { return failures == 0; }
};

/// alpha^s chi^r theta(L1) = (-alpha)^s chi^r theta(L2) for every theta of
/// conductor index s (1 <= s <= n) and 0 <= r <= k-2. Entries with s < s_min
/// are reported but never counted as failures.
AdmissibleReport check_admissible(const AdmissiblePair& pair, int s_min = 2, const ScanOptions& options = {});

/// L^+- with integer coefficients drawn uniformly from (-bound, bound).
PMDecomposition random_pm(int p, int n, int k, long eps, int cap, SplitMix64& rng, long bound = 30);

/// Smallest half-valuation over the coefficients, in units of 1/2.
int64_t min_half_valuation(const QuadGroupRing& f);

}  // namespace iwa
