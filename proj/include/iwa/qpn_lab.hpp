#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "iwa/sign.hpp"

namespace iwa {

/// Exact element of Q(zeta_{p^n}) in the power basis 1, zeta, ..., zeta^{phi(p^n)-1}.
///
/// Ranks of Galois-stable spans agree with those over Q_p because
/// [Q_p(zeta_{p^n}) : Q_p] = [Q(zeta_{p^n}) : Q].
class CycRationalElem {
public:
    CycRationalElem(int p, int n, std::vector<mpq_class> coeffs);

    static CycRationalElem zero(int p, int n);
    static CycRationalElem constant(int p, int n, const mpq_class& c);
    /// zeta_{p^m}^e = zeta_{p^n}^{e p^{n-m}}, m <= n.
    static CycRationalElem zeta(int p, int n, int m, long e = 1);
    /// Reduces sum poly[i] zeta^i modulo Phi_{p^n}.
    static CycRationalElem reduce(int p, int n, std::vector<mpq_class> poly);

    int prime() const { return p_; }
    int level() const { return n_; }
    const std::vector<mpq_class>& coeffs() const { return coeffs_; }

    CycRationalElem operator+(const CycRationalElem& y) const;
    CycRationalElem operator-(const CycRationalElem& y) const;
    CycRationalElem operator*(const CycRationalElem& y) const;
    CycRationalElem scaled(const mpq_class& c) const;
    bool operator==(const CycRationalElem& y) const { return p_ == y.p_ && n_ == y.n_ && coeffs_ == y.coeffs_; }
    bool is_zero() const;

    /// zeta -> zeta^a, gcd(a, p) = 1.
    CycRationalElem galois(long a) const;
    /// Whether the element lies in Q(zeta_{p^m}): support on multiples of p^{n-m}.
    bool in_subfield(int m) const;

private:
    int p_;
    int n_;
    std::vector<mpq_class> coeffs_;
};

/// pi_0 = 1, pi_1 = zeta_p + 1/(p-1), pi_i = zeta_{p^i} for i >= 2; embedded at level n.
CycRationalElem pi_element(int p, int n, int i);

/// Tr_{n/m}: sum of sigma_a over a = 1 mod p^m, returned at level n.
CycRationalElem trace(const CycRationalElem& x, int m);

std::vector<CycRationalElem> galois_orbit(const CycRationalElem& x);

struct SubspaceBasis {
    int p = 0;
    int n = 0;
    /// Linearly independent integer rows (echelon form), one per dimension.
    std::vector<std::vector<mpz_class>> basis;
    std::string description;

    size_t rank() const { return basis.size(); }
};

SubspaceBasis span(int p, int n, const std::vector<CycRationalElem>& vectors, std::string description);
SubspaceBasis sum(const SubspaceBasis& a, const SubspaceBasis& b);
size_t intersection_dim(const SubspaceBasis& a, const SubspaceBasis& b);
bool contains(const SubspaceBasis& space, const CycRationalElem& x);
bool subspaces_equal(const SubspaceBasis& a, const SubspaceBasis& b);

/// dim Q^{(i)}: 1, p-2, and p^{i-2}(p-1)^2 for i >= 2.
long piece_dim(int p, int i);

struct GaloisSpan {
    size_t rank = 0;
    long predicted = 0;
};

size_t orbit_rank(const CycRationalElem& x);

/// Orbit rank of sum_i x_i pi_i (x has n+1 entries) against sum_{x_i != 0} dim Q^{(i)}.
GaloisSpan galois_span_dim(int p, int n, const std::vector<mpq_class>& x);

struct GeneratedSpan {
    SubspaceBasis orbit_span;
    SubspaceBasis predicted;  // Q + sum_{r : a_r != 0} orbit(zeta_{p^r})
    bool matches = false;
};

/// Orbit span of a_0 + sum_i a_i zeta_{p^i}. Throws HypothesisViolated when a_1 = (p-1) a_0.
GeneratedSpan generated_orbit_span(int p, int n, const std::vector<mpq_class>& a);

/// {x : Tr_{n/m+1}(x) in Q(zeta_{p^m}) for m in [0, n-1] even (plus) / odd (minus)}.
SubspaceBasis plus_minus_space(int p, int n, Sign sign);

/// Q + sum of Galois orbits of zeta_{p^m}, 1 <= m <= n, m even (plus) / odd (minus).
SubspaceBasis r_space(int p, int n, Sign sign);

struct DimFormula {
    long plus = 0;   // 1 + sum_{1 <= m <= n/2} p^{2m-2}(p-1)^2
    long minus = 0;  // p - 1 + sum_{1 <= m <= (n-1)/2} p^{2m-1}(p-1)^2
};

DimFormula dim_formula(int p, int n);

struct DimsTable {
    int p = 0;
    int n = 0;
    size_t q_plus = 0;
    size_t q_minus = 0;
    size_t r_plus = 0;
    size_t r_minus = 0;
    DimFormula formula;
    bool coincide_plus = false;
    bool coincide_minus = false;
};

DimsTable dims_table(int p, int n);

/// U_n = {g in E[G_n] : Phi_t(gamma) | g for even t < n, equal Delta-row sums}.
struct USpaceReport {
    int p = 0;
    int n = 0;
    long dim = 0;              // (p-1)p^{n-1} minus the exact constraint rank
    long crt_count = 0;        // (p-1)p^{n-1} - (p-2) - sum_{even t < n} (p-1) phi(p^t)
    long count_upto_half = 0;  // the same count with the bound 1 <= m <= n/2 on t = 2m
    long r_plus = 0;
    bool matches = false;      // dim == r_plus
};

USpaceReport u_space_dim(int p, int n);

}  // namespace iwa
