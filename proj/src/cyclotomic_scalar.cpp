#include "iwa/cyclotomic_scalar.hpp"

#include <numeric>

namespace iwa {

long int_pow(long base, int exponent) {
    long r = 1;
    for (int i = 0; i < exponent; ++i) r *= base;
    return r;
}

int cyclotomic_degree(int p, int m) {
    return m == 0 ? 1 : static_cast<int>(int_pow(p, m - 1) * (p - 1));
}

template <class S>
CyclotomicScalar<S>::CyclotomicScalar(int p, int m, std::vector<S> coeffs)
    : p_(p), m_(m), coeffs_(std::move(coeffs)) {
    if (m < 0) throw Error(ErrorKind::BadLevel, "negative cyclotomic level");
    if (static_cast<int>(coeffs_.size()) != cyclotomic_degree(p, m))
        throw Error(ErrorKind::ShapeMismatch, "cyclotomic coefficient vector has length " +
                                                  std::to_string(coeffs_.size()) + ", expected phi(p^m) = " +
                                                  std::to_string(cyclotomic_degree(p, m)));
}

template <class S>
CyclotomicScalar<S> CyclotomicScalar<S>::zero(int p, int m, const S& proto) {
    return CyclotomicScalar(p, m, std::vector<S>(static_cast<size_t>(cyclotomic_degree(p, m)), proto.zero_like()));
}

template <class S>
CyclotomicScalar<S> CyclotomicScalar<S>::constant(int p, int m, const S& c) {
    CyclotomicScalar r = zero(p, m, c);
    r.coeffs_[0] = c;
    return r;
}

template <class S>
CyclotomicScalar<S> CyclotomicScalar<S>::zeta_power(int p, int m, long e, const S& proto) {
    const long order = int_pow(p, m);
    std::vector<S> poly(static_cast<size_t>(order), proto.zero_like());
    poly[static_cast<size_t>(((e % order) + order) % order)] = proto.one_like();
    return reduce(p, m, std::move(poly));
}

template <class S>
CyclotomicScalar<S> CyclotomicScalar<S>::reduce(int p, int m, std::vector<S> poly) {
    const int deg = cyclotomic_degree(p, m);
    if (poly.empty()) throw Error(ErrorKind::ShapeMismatch, "reducing an empty polynomial");
    if (m == 0) {
        S total = poly[0];
        for (size_t i = 1; i < poly.size(); ++i) total += poly[i];
        return CyclotomicScalar(p, 0, {total});
    }
    const long step = int_pow(p, m - 1);
    // X^{phi} = -(1 + X^{p^{m-1}} + ... + X^{(p-2)p^{m-1}})
    for (long i = static_cast<long>(poly.size()) - 1; i >= deg; --i) {
        const S c = poly[static_cast<size_t>(i)];
        if (c.is_zero()) continue;
        for (int j = 0; j + 1 < p; ++j) {
            auto& target = poly[static_cast<size_t>(i - deg + j * step)];
            target -= c;
        }
    }
    const S zero = poly[0].zero_like();
    poly.resize(static_cast<size_t>(deg), zero);
    return CyclotomicScalar(p, m, std::move(poly));
}

template <class S>
void CyclotomicScalar<S>::check_shape(const CyclotomicScalar& y) const {
    if (p_ != y.p_ || m_ != y.m_)
        throw Error(ErrorKind::ShapeMismatch, "cyclotomic scalars at different (p, m)");
}

template <class S>
CyclotomicScalar<S> CyclotomicScalar<S>::operator-() const {
    std::vector<S> c;
    c.reserve(coeffs_.size());
    for (const auto& x : coeffs_) c.push_back(-x);
    return CyclotomicScalar(p_, m_, std::move(c));
}

template <class S>
CyclotomicScalar<S> CyclotomicScalar<S>::operator+(const CyclotomicScalar& y) const {
    check_shape(y);
    std::vector<S> c;
    c.reserve(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) c.push_back(coeffs_[i] + y.coeffs_[i]);
    return CyclotomicScalar(p_, m_, std::move(c));
}

template <class S>
CyclotomicScalar<S> CyclotomicScalar<S>::operator-(const CyclotomicScalar& y) const {
    check_shape(y);
    std::vector<S> c;
    c.reserve(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) c.push_back(coeffs_[i] - y.coeffs_[i]);
    return CyclotomicScalar(p_, m_, std::move(c));
}

template <class S>
CyclotomicScalar<S> CyclotomicScalar<S>::operator*(const CyclotomicScalar& y) const {
    check_shape(y);
    const size_t d = coeffs_.size();
    std::vector<S> poly(2 * d - 1, coeffs_[0].zero_like());
    for (size_t i = 0; i < d; ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (size_t j = 0; j < d; ++j) {
            if (y.coeffs_[j].is_zero()) continue;
            poly[i + j] += coeffs_[i] * y.coeffs_[j];
        }
    }
    return reduce(p_, m_, std::move(poly));
}

template <class S>
CyclotomicScalar<S> CyclotomicScalar<S>::scaled(const S& c) const {
    std::vector<S> out;
    out.reserve(coeffs_.size());
    for (const auto& x : coeffs_) out.push_back(x * c);
    return CyclotomicScalar(p_, m_, std::move(out));
}

template <class S>
bool CyclotomicScalar<S>::operator==(const CyclotomicScalar& y) const {
    check_shape(y);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (!(coeffs_[i] == y.coeffs_[i])) return false;
    return true;
}

template <class S>
bool CyclotomicScalar<S>::is_zero() const {
    for (const auto& x : coeffs_)
        if (!x.is_zero()) return false;
    return true;
}

template <class S>
CyclotomicScalar<S> CyclotomicScalar<S>::galois(long a) const {
    if (m_ == 0) return *this;
    if (a % p_ == 0) throw Error(ErrorKind::InvalidResidue, "Galois exponent divisible by p");
    const long order = int_pow(p_, m_);
    const long shift = ((a % order) + order) % order;
    std::vector<S> poly(static_cast<size_t>(order), coeffs_[0].zero_like());
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        poly[static_cast<size_t>((shift * static_cast<long>(i)) % order)] += coeffs_[i];
    }
    return reduce(p_, m_, std::move(poly));
}

template <class S>
S CyclotomicScalar<S>::norm() const {
    CyclotomicScalar acc = *this;
    const long order = int_pow(p_, m_);
    for (long a = 2; a < order; ++a) {
        if (a % p_ == 0) continue;
        acc = acc * galois(a);
    }
    return acc.coeffs_[0];
}

template <class S>
CyclotomicScalar<S> CyclotomicScalar<S>::inv() const {
    if (is_zero()) throw Error(ErrorKind::DivideByZero, "inverse of zero in a cyclotomic field");
    const long order = int_pow(p_, m_);
    CyclotomicScalar cofactor = constant(p_, m_, coeffs_[0].one_like());
    for (long a = 2; a < order; ++a) {
        if (a % p_ == 0) continue;
        cofactor = cofactor * galois(a);
    }
    const CyclotomicScalar n = *this * cofactor;
    for (int i = 1; i < n.degree(); ++i)
        if (!n[i].is_zero())
            throw Error(ErrorKind::PrecisionExhausted, "norm did not collapse to a constant at working precision");
    if (n[0].is_zero()) throw Error(ErrorKind::DivideByZero, "element has zero norm at working precision");
    CyclotomicScalar result = cofactor.scaled(n[0].inv());
    if (!(*this * result == constant(p_, m_, coeffs_[0].one_like())))
        throw Error(ErrorKind::PrecisionExhausted, "inverse failed the re-multiplication check");
    return result;
}

Valuation pi_valuation(const CyclotomicScalar<PadicScalar>& x) {
    if (x.is_zero()) return {true, 0};
    const PadicScalar n = x.norm();
    if (n.is_zero()) return {true, 0};
    mpq_class v(n.valuation(), cyclotomic_degree(x.prime(), x.level()));
    v.canonicalize();
    return {false, v};
}

template class CyclotomicScalar<PadicScalar>;
template class CyclotomicScalar<QuadExtScalar>;

}  // namespace iwa
