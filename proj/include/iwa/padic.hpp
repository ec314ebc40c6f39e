#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "iwa/error.hpp"

namespace iwa {

/// p^k, cached per thread. References stay valid for the lifetime of the thread.
const mpz_class& prime_power(unsigned p, unsigned k);

/// Strips every factor p from x (x != 0) and returns how many were removed.
unsigned long strip_prime(mpz_class& x, unsigned p);

enum class CancellationPolicy { ReportZero, Error };

struct PrecisionPolicy {
    int cap = 40;
    CancellationPolicy on_cancellation = CancellationPolicy::ReportZero;
};

/// Element of Q_p with capped relative precision.
///
/// A nonzero value is p^v * u with u a unit known modulo p^prec (1 <= prec <= cap).
/// A zero is the sentinel prec == 0; its `v` field then holds the absolute
/// precision to which it is known to vanish (kInfinity for an exact zero).
/// Equality compares at the smaller of the two absolute precisions.
class PadicScalar {
public:
    static constexpr int64_t kInfinity = INT64_MAX / 4;

    PadicScalar() = default;

    static PadicScalar zero(int p, int cap);
    static PadicScalar zero_at(int p, int cap, int64_t absolute_precision);
    static PadicScalar one(int p, int cap);
    static PadicScalar from_int(int p, int cap, long value);
    static PadicScalar from_integer(int p, int cap, const mpz_class& value);
    static PadicScalar from_rational(int p, int cap, const mpz_class& num, const mpz_class& den);
    /// p^v * u. `u` need not be reduced; it must be prime to p.
    static PadicScalar from_parts(int p, int cap, int64_t v, const mpz_class& u, int precision);

    int prime() const { return p_; }
    int cap() const { return cap_; }
    bool is_zero() const { return prec_ == 0; }
    /// kInfinity for any zero.
    int64_t valuation() const { return is_zero() ? kInfinity : v_; }
    int relative_precision() const { return prec_; }
    int64_t absolute_precision() const { return is_zero() ? v_ : v_ + prec_; }
    const mpz_class& unit() const { return u_; }

    /// Integer congruent to the value modulo p^k. Requires valuation >= 0.
    mpz_class residue(int64_t k) const;
    /// Drops digits beyond absolute precision `abs`.
    PadicScalar truncated(int64_t abs) const;

    PadicScalar operator-() const;
    PadicScalar operator+(const PadicScalar& y) const;
    PadicScalar operator-(const PadicScalar& y) const;
    PadicScalar operator*(const PadicScalar& y) const;
    PadicScalar operator/(const PadicScalar& y) const { return *this * y.inv(); }
    PadicScalar& operator+=(const PadicScalar& y) { return *this = *this + y; }
    PadicScalar& operator-=(const PadicScalar& y) { return *this = *this - y; }
    PadicScalar& operator*=(const PadicScalar& y) { return *this = *this * y; }

    PadicScalar inv() const;
    PadicScalar pow(int64_t e) const;
    PadicScalar mul_p_power(int64_t k) const;

    bool operator==(const PadicScalar& y) const { return (*this - y).is_zero(); }
    bool identical(const PadicScalar& y) const;

    // Uniform scalar interface shared with QuadExtScalar.
    PadicScalar zero_like() const { return zero(p_, cap_); }
    PadicScalar one_like() const { return one(p_, cap_); }
    PadicScalar from_int_like(long value) const { return from_int(p_, cap_, value); }
    PadicScalar scaled(const PadicScalar& c) const { return *this * c; }
    PadicScalar base_component() const { return *this; }

    std::string to_string() const;

private:
    int p_ = 0;
    int cap_ = 0;
    int64_t v_ = kInfinity;
    int prec_ = 0;
    mpz_class u_ = 0;
};

PadicScalar add(const PadicScalar& x, const PadicScalar& y, const PrecisionPolicy& policy);

/// The (p-1)-st root of unity congruent to a mod p.
PadicScalar teichmuller(int p, int cap, long a);

/// 1 + p, the fixed generator of 1 + pZ_p playing the role of chi(gamma).
PadicScalar gamma_unit(int p, int cap);

/// Smallest positive primitive root mod p.
int primitive_root(int p);

/// v_p(x - 1) for x in 1 + pZ_p, x != 1.
int64_t val_growth_constant(const PadicScalar& x);

struct ValGrowthCheck {
    int64_t constant = 0;   // v_p(x - 1)
    int64_t observed = 0;   // v_p(x^{p^n} - 1)
    bool holds = false;     // observed == n + constant
};

ValGrowthCheck verify_val_growth(const PadicScalar& x, int n);

/// Element a + b*alpha of Q_p(alpha), alpha^2 = s.
///
/// Q_p(alpha) is only a field when s is not a square in Q_p; `inv` throws
/// DivideByZero on zero divisors.
class QuadExtScalar {
public:
    QuadExtScalar() = default;
    QuadExtScalar(PadicScalar a, PadicScalar b, PadicScalar s);

    /// s = -eps * p^{k-1}, eps taken as a Teichmuller lift.
    static PadicScalar alpha_square(int p, int cap, int k, long eps);
    static QuadExtScalar alpha(const PadicScalar& s);
    static QuadExtScalar from_base(const PadicScalar& a, const PadicScalar& s);

    const PadicScalar& a() const { return a_; }
    const PadicScalar& b() const { return b_; }
    const PadicScalar& s() const { return s_; }
    int prime() const { return a_.prime(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    QuadExtScalar operator-() const { return {-a_, -b_, s_}; }
    QuadExtScalar operator+(const QuadExtScalar& y) const;
    QuadExtScalar operator-(const QuadExtScalar& y) const;
    QuadExtScalar operator*(const QuadExtScalar& y) const;
    QuadExtScalar& operator+=(const QuadExtScalar& y) { return *this = *this + y; }
    QuadExtScalar& operator-=(const QuadExtScalar& y) { return *this = *this - y; }
    QuadExtScalar& operator*=(const QuadExtScalar& y) { return *this = *this * y; }
    bool operator==(const QuadExtScalar& y) const;

    QuadExtScalar conj() const { return {a_, -b_, s_}; }
    PadicScalar norm() const { return a_ * a_ - s_ * b_ * b_; }
    QuadExtScalar inv() const;
    QuadExtScalar divided_by_alpha() const;
    QuadExtScalar pow(int64_t e) const;

    /// Valuation in units of 1/2: min(2 v(a), 2 v(b) + v(s)). kInfinity for zero.
    int64_t half_valuation() const;

    QuadExtScalar zero_like() const { return from_base(a_.zero_like(), s_); }
    QuadExtScalar one_like() const { return from_base(a_.one_like(), s_); }
    QuadExtScalar from_int_like(long value) const { return from_base(a_.from_int_like(value), s_); }
    QuadExtScalar scaled(const PadicScalar& c) const { return {a_ * c, b_ * c, s_}; }
    const PadicScalar& base_component() const { return a_; }

    std::string to_string() const;

private:
    void check_context(const QuadExtScalar& y) const;

    PadicScalar a_, b_, s_;
};

}  // namespace iwa
