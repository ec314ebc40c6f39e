#pragma once

#include <type_traits>
#include <vector>

#include "iwa/cyclotomic_scalar.hpp"
#include "iwa/padic.hpp"

namespace iwa {

enum class ScalarRing { Base, Quad };

template <class S>
constexpr ScalarRing ring_of() {
    return std::is_same_v<S, QuadExtScalar> ? ScalarRing::Quad : ScalarRing::Base;
}

/// Element of E[G_n] = E[Delta][gamma]/(gamma^{p^{n-1}} - 1).
///
/// Delta is generated by delta, which corresponds to the smallest primitive
/// root g mod p. Coefficient (sigma, r) multiplies delta^sigma gamma^r.
template <class S>
class GroupRingElem {
public:
    GroupRingElem(int p, int n, const S& proto);
    GroupRingElem(int p, int n, std::vector<S> coeffs);

    static GroupRingElem zero(int p, int n, const S& proto) { return GroupRingElem(p, n, proto); }
    static GroupRingElem one(int p, int n, const S& proto);
    static GroupRingElem monomial(int p, int n, int sigma, long r, const S& c);
    /// Lifts a gamma-polynomial (length p^{n-1}) into Delta-row 0.
    static GroupRingElem from_gamma_poly(int p, int n, std::vector<S> poly);

    int prime() const { return p_; }
    int level() const { return n_; }
    int gamma_order() const { return P_; }
    int delta_order() const { return p_ - 1; }
    const S& proto() const { return zero_; }

    const S& at(int sigma, int r) const { return coeffs_[index(sigma, r)]; }
    S& at(int sigma, int r) { return coeffs_[index(sigma, r)]; }
    const std::vector<S>& coeffs() const { return coeffs_; }
    std::vector<S> row(int sigma) const;

    GroupRingElem operator-() const;
    GroupRingElem operator+(const GroupRingElem& g) const;
    GroupRingElem operator-(const GroupRingElem& g) const;
    GroupRingElem operator*(const GroupRingElem& g) const;
    GroupRingElem& operator+=(const GroupRingElem& g) { return *this = *this + g; }
    GroupRingElem& operator-=(const GroupRingElem& g) { return *this = *this - g; }
    GroupRingElem& operator*=(const GroupRingElem& g) { return *this = *this * g; }
    GroupRingElem scaled(const S& c) const;
    GroupRingElem scaled_base(const PadicScalar& c) const;

    bool operator==(const GroupRingElem& g) const;
    bool is_zero() const;
    void check_shape(const GroupRingElem& g) const;

private:
    size_t index(int sigma, long r) const;

    int p_;
    int n_;
    int P_;
    S zero_;
    std::vector<S> coeffs_;
};

/// Working precision of a scalar: the cap of its base component.
template <class S>
int scalar_cap(const S& x) {
    return x.base_component().cap();
}

/// omega_T(g)^sigma for sigma = 0..p-2.
std::vector<PadicScalar> delta_character_table(int p, int cap);

/// Base-ring element promoted into Q_p(alpha), alpha^2 = s.
GroupRingElem<QuadExtScalar> promote(const GroupRingElem<PadicScalar>& f, const PadicScalar& s);

/// Phi_m(gamma) = sum_{i<p} gamma^{i p^{m-1}}; the constant p once m >= n.
template <class S>
GroupRingElem<S> phi(int p, int n, int m, const S& proto);

/// Image of the Iwasawa-algebra element Phi_m(u^{-j} gamma) at level n.
/// For m >= n this is the constant sum_i u^{-j i p^{m-1}}, p times a unit.
template <class S>
GroupRingElem<S> twisted_phi(int p, int n, int m, long j, const S& proto);

/// c_{r,sigma} -> u^{-jr} c_{r,sigma} on the representatives 0 <= r < p^{n-1}.
/// Multiplicative only modulo p^{n + v_p(j)}: gamma^{p^{n-1}} = 1 does not
/// survive the substitution exactly.
template <class S>
GroupRingElem<S> twist_gamma(const GroupRingElem<S>& f, long j);

/// c_{r,sigma} -> u^{r' r} omega_T(g)^{r sigma} c_{r',sigma}.
template <class S>
GroupRingElem<S> twist_full(const GroupRingElem<S>& f, long r);

/// Gamma-part of e_d f, namely sum_sigma omega_T(g)^{d sigma} row_sigma.
/// The idempotent image itself is delta_embed(p, n, component, d).
template <class S>
std::vector<S> delta_component(const GroupRingElem<S>& f, int d);

/// Element whose Delta-part is the omega_T^d isotypic line carrying `component`.
template <class S>
GroupRingElem<S> delta_embed(int p, int n, const std::vector<S>& component, int d);

template <class S>
struct BsumTable {
    int p = 0;
    int m = 0;
    std::vector<std::vector<S>> values;  // values[sigma][r], r < p^m
};

template <class S>
BsumTable<S> b_sums(const GroupRingElem<S>& f, int m);

template <class S>
bool divisible_by_phi(const GroupRingElem<S>& f, int m);

template <class S>
bool is_plus_admissible(const GroupRingElem<S>& f);

/// slots[m][d] = sum_sigma omega_T(g)^{d sigma} row_sigma(zeta_{p^m}).
template <class S>
struct CrtDecomposition {
    int p = 0;
    int n = 0;
    std::vector<std::vector<CyclotomicScalar<S>>> slots;
};

/// CRT reconstruction divides by up to p^{n-1}; N >= n + 10 is required.
void require_crt_precision(int cap, int n);

template <class S>
std::vector<CyclotomicScalar<S>> crt_component(const GroupRingElem<S>& f, int m);

template <class S>
CrtDecomposition<S> crt_decompose(const GroupRingElem<S>& f);

template <class S>
GroupRingElem<S> crt_reconstruct(const CrtDecomposition<S>& parts);

enum class QuotientRep {
    ZeroSlot,   // CRT slot m of the quotient is zero
    LowDegree,  // quotient of gamma-degree < p^{n-1} - phi(p^m); integral when f is
};

template <class S>
GroupRingElem<S> divide_exact(const GroupRingElem<S>& f, int m, QuotientRep rep = QuotientRep::ZeroSlot);

template <class S>
GroupRingElem<S> invert_unit(const GroupRingElem<S>& f);

/// Smallest valuation among the coefficients (kInfinity for zero).
int64_t min_valuation(const GroupRingElem<PadicScalar>& f);

extern template class GroupRingElem<PadicScalar>;
extern template class GroupRingElem<QuadExtScalar>;

}  // namespace iwa
