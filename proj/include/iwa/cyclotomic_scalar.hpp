#pragma once

#include <gmpxx.h>

#include <vector>

#include "iwa/padic.hpp"

namespace iwa {

long int_pow(long base, int exponent);

/// phi(p^m): p^{m-1}(p-1) for m >= 1, and 1 for m = 0.
int cyclotomic_degree(int p, int m);

/// Element of E(zeta_{p^m}) as a polynomial in zeta of degree < phi(p^m).
///
/// S is PadicScalar or QuadExtScalar. Level 0 is E itself (zeta_1 = 1).
template <class S>
class CyclotomicScalar {
public:
    CyclotomicScalar(int p, int m, std::vector<S> coeffs);

    static CyclotomicScalar zero(int p, int m, const S& proto);
    static CyclotomicScalar constant(int p, int m, const S& c);
    static CyclotomicScalar zeta_power(int p, int m, long e, const S& proto);
    /// Reduces sum poly[i] X^i modulo Phi_{p^m}(X) by monic long division.
    static CyclotomicScalar reduce(int p, int m, std::vector<S> poly);

    int prime() const { return p_; }
    int level() const { return m_; }
    int degree() const { return static_cast<int>(coeffs_.size()); }
    const std::vector<S>& coeffs() const { return coeffs_; }
    const S& operator[](int i) const { return coeffs_[static_cast<size_t>(i)]; }

    CyclotomicScalar operator-() const;
    CyclotomicScalar operator+(const CyclotomicScalar& y) const;
    CyclotomicScalar operator-(const CyclotomicScalar& y) const;
    CyclotomicScalar operator*(const CyclotomicScalar& y) const;
    CyclotomicScalar scaled(const S& c) const;
    bool operator==(const CyclotomicScalar& y) const;
    bool is_zero() const;

    /// Image under zeta -> zeta^a, gcd(a, p) = 1.
    CyclotomicScalar galois(long a) const;
    /// Norm down to E: the product of all Galois conjugates.
    S norm() const;
    /// Inverse via the norm; re-multiplication is checked before returning.
    CyclotomicScalar inv() const;

private:
    void check_shape(const CyclotomicScalar& y) const;

    int p_;
    int m_;
    std::vector<S> coeffs_;
};

struct Valuation {
    bool infinite = false;
    mpq_class value;
};

/// v_p extended to Q_p(zeta_{p^m}): v_p(norm) / phi(p^m).
Valuation pi_valuation(const CyclotomicScalar<PadicScalar>& x);

extern template class CyclotomicScalar<PadicScalar>;
extern template class CyclotomicScalar<QuadExtScalar>;

}  // namespace iwa
