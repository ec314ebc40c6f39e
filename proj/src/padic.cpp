#include "iwa/padic.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace iwa {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::DivideByZero: return "DivideByZero";
    case ErrorKind::InvalidResidue: return "InvalidResidue";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::BadLevel: return "BadLevel";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::BadConductor: return "BadConductor";
    case ErrorKind::TrivialCharacter: return "TrivialCharacter";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NotDecomposable: return "NotDecomposable";
    case ErrorKind::UnboundedResult: return "UnboundedResult";
    case ErrorKind::MalformedInput: return "MalformedInput";
    }
    return "Unknown";
}

const mpz_class& prime_power(unsigned p, unsigned k) {
    thread_local std::map<unsigned, std::deque<mpz_class>> cache;
    auto& powers = cache[p];
    if (powers.empty()) powers.emplace_back(1);
    while (powers.size() <= k) powers.push_back(powers.back() * p);
    return powers[k];
}

unsigned long strip_prime(mpz_class& x, unsigned p) {
    mpz_class prime(p);
    return mpz_remove(x.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t());
}

namespace {

int64_t saturating_add(int64_t a, int64_t b) {
    if (a >= PadicScalar::kInfinity || b >= PadicScalar::kInfinity) return PadicScalar::kInfinity;
    return std::min(a + b, PadicScalar::kInfinity);
}

void require_same_prime(const PadicScalar& x, const PadicScalar& y) {
    if (x.prime() != y.prime())
        throw Error(ErrorKind::ShapeMismatch,
                    "p-adic operands over different primes " + std::to_string(x.prime()) + " and " +
                        std::to_string(y.prime()));
}

mpz_class mod_nonneg(const mpz_class& x, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

PadicScalar add_signed(const PadicScalar& x, const PadicScalar& y, bool negate_y, CancellationPolicy policy) {
    require_same_prime(x, y);
    const int p = x.prime();
    const int cap = std::min(x.cap(), y.cap());
    const int64_t abs = std::min(x.absolute_precision(), y.absolute_precision());
    if (x.is_zero() && y.is_zero()) return PadicScalar::zero_at(p, cap, abs);
    if (x.is_zero()) return (negate_y ? -y : y).truncated(abs);
    if (y.is_zero()) return x.truncated(abs);

    const int64_t vmin = std::min(x.valuation(), y.valuation());
    const int64_t width = abs - vmin;
    mpz_class sum = 0;
    auto accumulate = [&](const PadicScalar& z, bool negate) {
        const int64_t shift = z.valuation() - vmin;
        if (shift >= width) return;
        mpz_class term = z.unit() * prime_power(p, static_cast<unsigned>(shift));
        if (negate)
            sum -= term;
        else
            sum += term;
    };
    accumulate(x, false);
    accumulate(y, negate_y);
    sum = mod_nonneg(sum, prime_power(p, static_cast<unsigned>(width)));
    if (sum == 0) {
        if (policy == CancellationPolicy::Error)
            throw Error(ErrorKind::PrecisionExhausted, "cancellation left no significant digits");
        return PadicScalar::zero_at(p, cap, abs);
    }
    const auto k = static_cast<int64_t>(strip_prime(sum, p));
    const int64_t v = vmin + k;
    return PadicScalar::from_parts(p, cap, v, sum, static_cast<int>(abs - v));
}

}  // namespace

PadicScalar PadicScalar::zero(int p, int cap) { return zero_at(p, cap, kInfinity); }

PadicScalar PadicScalar::zero_at(int p, int cap, int64_t absolute_precision) {
    PadicScalar z;
    z.p_ = p;
    z.cap_ = cap;
    z.v_ = std::min(absolute_precision, kInfinity);
    return z;
}

PadicScalar PadicScalar::one(int p, int cap) { return from_parts(p, cap, 0, 1, cap); }

PadicScalar PadicScalar::from_int(int p, int cap, long value) { return from_integer(p, cap, mpz_class(value)); }

PadicScalar PadicScalar::from_integer(int p, int cap, const mpz_class& value) {
    if (value == 0) return zero(p, cap);
    mpz_class u = value;
    const auto v = static_cast<int64_t>(strip_prime(u, p));
    return from_parts(p, cap, v, u, cap);
}

PadicScalar PadicScalar::from_rational(int p, int cap, const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw Error(ErrorKind::DivideByZero, "rational with zero denominator");
    return from_integer(p, cap, num) / from_integer(p, cap, den);
}

PadicScalar PadicScalar::from_parts(int p, int cap, int64_t v, const mpz_class& u, int precision) {
    if (p < 3 || p % 2 == 0) throw Error(ErrorKind::InvalidResidue, "p must be an odd prime");
    if (cap < 1) throw Error(ErrorKind::PrecisionExhausted, "precision cap must be >= 1");
    if (u % p == 0) throw Error(ErrorKind::InvalidResidue, "unit part divisible by p");
    PadicScalar x;
    x.p_ = p;
    x.cap_ = cap;
    x.v_ = v;
    x.prec_ = std::clamp(precision, 1, cap);
    x.u_ = mod_nonneg(u, prime_power(p, x.prec_));
    return x;
}

mpz_class PadicScalar::residue(int64_t k) const {
    if (is_zero() || k <= 0) return 0;
    if (v_ < 0) throw Error(ErrorKind::InvalidResidue, "residue of a non-integral p-adic number");
    if (v_ >= k) return 0;
    return mod_nonneg(u_ * prime_power(p_, static_cast<unsigned>(v_)), prime_power(p_, static_cast<unsigned>(k)));
}

PadicScalar PadicScalar::truncated(int64_t abs) const {
    if (is_zero()) return zero_at(p_, cap_, std::min(v_, abs));
    if (v_ >= abs) return zero_at(p_, cap_, abs);
    if (v_ + prec_ <= abs) return *this;
    return from_parts(p_, cap_, v_, u_, static_cast<int>(abs - v_));
}

PadicScalar PadicScalar::operator-() const {
    if (is_zero()) return *this;
    PadicScalar r = *this;
    r.u_ = prime_power(p_, prec_) - u_;
    return r;
}

PadicScalar PadicScalar::operator+(const PadicScalar& y) const {
    return add_signed(*this, y, false, CancellationPolicy::ReportZero);
}

PadicScalar PadicScalar::operator-(const PadicScalar& y) const {
    return add_signed(*this, y, true, CancellationPolicy::ReportZero);
}

PadicScalar add(const PadicScalar& x, const PadicScalar& y, const PrecisionPolicy& policy) {
    PadicScalar r = add_signed(x, y, false, policy.on_cancellation);
    if (r.is_zero() || r.relative_precision() <= policy.cap) return r;
    return r.truncated(r.valuation() + policy.cap);
}

PadicScalar PadicScalar::operator*(const PadicScalar& y) const {
    require_same_prime(*this, y);
    const int cap = std::min(cap_, y.cap_);
    // For a zero operand v_ is its absolute precision, so this covers both cases.
    if (is_zero() || y.is_zero()) return zero_at(p_, cap, saturating_add(v_, y.v_));
    const int prec = std::min({prec_, y.prec_, cap});
    mpz_class u = u_ * y.u_;
    return from_parts(p_, cap, v_ + y.v_, u, prec);
}

PadicScalar PadicScalar::inv() const {
    if (is_zero()) throw Error(ErrorKind::DivideByZero, "inverse of p-adic zero");
    mpz_class r;
    mpz_invert(r.get_mpz_t(), u_.get_mpz_t(), prime_power(p_, prec_).get_mpz_t());
    return from_parts(p_, cap_, -v_, r, prec_);
}

PadicScalar PadicScalar::pow(int64_t e) const {
    if (e < 0) return inv().pow(-e);
    if (e == 0) return one(p_, cap_);
    if (is_zero()) {
        if (v_ >= kInfinity || v_ <= 0) return *this;
        return zero_at(p_, cap_, v_ > kInfinity / e ? kInfinity : v_ * e);
    }
    mpz_class r;
    mpz_class exponent(static_cast<unsigned long>(e));
    mpz_powm(r.get_mpz_t(), u_.get_mpz_t(), exponent.get_mpz_t(), prime_power(p_, prec_).get_mpz_t());
    return from_parts(p_, cap_, v_ * e, r, prec_);
}

PadicScalar PadicScalar::mul_p_power(int64_t k) const {
    PadicScalar r = *this;
    r.v_ = saturating_add(r.v_, k);
    return r;
}

bool PadicScalar::identical(const PadicScalar& y) const {
    return p_ == y.p_ && v_ == y.v_ && prec_ == y.prec_ && u_ == y.u_;
}

std::string PadicScalar::to_string() const {
    if (is_zero()) {
        return v_ >= kInfinity ? std::string("0") : "O(" + std::to_string(p_) + "^" + std::to_string(v_) + ")";
    }
    std::string s = u_.get_str();
    if (v_ != 0) s += "*" + std::to_string(p_) + "^" + std::to_string(v_);
    return s + " + O(" + std::to_string(p_) + "^" + std::to_string(v_ + prec_) + ")";
}

PadicScalar teichmuller(int p, int cap, long a) {
    long r = a % p;
    if (r < 0) r += p;
    if (r == 0) throw Error(ErrorKind::InvalidResidue, "Teichmuller lift of a residue divisible by p");
    const mpz_class& mod = prime_power(p, cap);
    mpz_class x = r;
    mpz_class exponent(p);
    // x -> x^p converges one digit per step.
    for (int i = 0; i <= cap; ++i) {
        mpz_class next;
        mpz_powm(next.get_mpz_t(), x.get_mpz_t(), exponent.get_mpz_t(), mod.get_mpz_t());
        if (next == x) break;
        x = next;
    }
    return PadicScalar::from_parts(p, cap, 0, x, cap);
}

PadicScalar gamma_unit(int p, int cap) { return PadicScalar::from_int(p, cap, 1 + p); }

int primitive_root(int p) {
    for (int g = 2; g < p; ++g) {
        bool primitive = true;
        int phi = p - 1;
        for (int q = 2; q <= phi; ++q) {
            if (phi % q != 0) continue;
            bool prime_q = true;
            for (int t = 2; t * t <= q; ++t)
                if (q % t == 0) prime_q = false;
            if (!prime_q) continue;
            mpz_class r;
            mpz_class base(g), e(phi / q), m(p);
            mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
            if (r == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    return 1;  // p = 2 only; never reached for odd primes >= 3
}

int64_t val_growth_constant(const PadicScalar& x) {
    const PadicScalar d = x - x.one_like();
    if (d.is_zero()) throw Error(ErrorKind::DegenerateInput, "x = 1 has infinite v_p(x - 1)");
    if (d.valuation() < 1) throw Error(ErrorKind::DegenerateInput, "x is not in 1 + pZ_p");
    return d.valuation();
}

ValGrowthCheck verify_val_growth(const PadicScalar& x, int n) {
    ValGrowthCheck check;
    check.constant = val_growth_constant(x);
    int64_t exponent = 1;
    for (int i = 0; i < n; ++i) exponent *= x.prime();
    const PadicScalar d = x.pow(exponent) - x.one_like();
    if (d.is_zero())
        throw Error(ErrorKind::PrecisionExhausted,
                    "x^{p^n} - 1 vanishes at the working precision; raise N above n + c");
    check.observed = d.valuation();
    check.holds = check.observed == n + check.constant;
    return check;
}

QuadExtScalar::QuadExtScalar(PadicScalar a, PadicScalar b, PadicScalar s)
    : a_(std::move(a)), b_(std::move(b)), s_(std::move(s)) {
    if (a_.prime() != s_.prime() || b_.prime() != s_.prime())
        throw Error(ErrorKind::ShapeMismatch, "quadratic components over different primes");
}

PadicScalar QuadExtScalar::alpha_square(int p, int cap, int k, long eps) {
    if (k < 2) throw Error(ErrorKind::InvalidResidue, "weight k must be >= 2");
    return -(teichmuller(p, cap, eps).mul_p_power(k - 1));
}

QuadExtScalar QuadExtScalar::alpha(const PadicScalar& s) { return {s.zero_like(), s.one_like(), s}; }

QuadExtScalar QuadExtScalar::from_base(const PadicScalar& a, const PadicScalar& s) {
    return {a, a.zero_like(), s};
}

void QuadExtScalar::check_context(const QuadExtScalar& y) const {
    if (!s_.identical(y.s_)) throw Error(ErrorKind::ShapeMismatch, "quadratic scalars with different alpha^2");
}

QuadExtScalar QuadExtScalar::operator+(const QuadExtScalar& y) const {
    check_context(y);
    return {a_ + y.a_, b_ + y.b_, s_};
}

QuadExtScalar QuadExtScalar::operator-(const QuadExtScalar& y) const {
    check_context(y);
    return {a_ - y.a_, b_ - y.b_, s_};
}

QuadExtScalar QuadExtScalar::operator*(const QuadExtScalar& y) const {
    check_context(y);
    return {a_ * y.a_ + s_ * b_ * y.b_, a_ * y.b_ + b_ * y.a_, s_};
}

bool QuadExtScalar::operator==(const QuadExtScalar& y) const {
    check_context(y);
    return a_ == y.a_ && b_ == y.b_;
}

QuadExtScalar QuadExtScalar::inv() const {
    const PadicScalar n = norm();
    if (n.is_zero()) throw Error(ErrorKind::DivideByZero, "inverse of a zero divisor in Q_p(alpha)");
    const PadicScalar ninv = n.inv();
    return {a_ * ninv, -(b_ * ninv), s_};
}

QuadExtScalar QuadExtScalar::divided_by_alpha() const {
    // (a + b alpha) / alpha = b + (a / s) alpha
    return {b_, a_ / s_, s_};
}

QuadExtScalar QuadExtScalar::pow(int64_t e) const {
    if (e < 0) return inv().pow(-e);
    QuadExtScalar result = one_like();
    QuadExtScalar base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

int64_t QuadExtScalar::half_valuation() const {
    int64_t best = PadicScalar::kInfinity;
    if (!a_.is_zero()) best = std::min(best, 2 * a_.valuation());
    if (!b_.is_zero()) best = std::min(best, 2 * b_.valuation() + s_.valuation());
    return best;
}

std::string QuadExtScalar::to_string() const { return "(" + a_.to_string() + ") + (" + b_.to_string() + ")*alpha"; }

}  // namespace iwa
