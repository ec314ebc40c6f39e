#include "iwa/qpn_lab.hpp"

#include <algorithm>
#include <utility>

#include "iwa/cyclotomic_scalar.hpp"
#include "iwa/error.hpp"

namespace iwa {

namespace {

using IntRow = std::vector<mpz_class>;

void require_level(int p, int n) {
    if (p < 3 || n < 0) throw Error(ErrorKind::BadLevel, "need an odd prime p and n >= 0");
}

void make_primitive(IntRow& row) {
    mpz_class g = 0;
    for (const auto& x : row) {
        if (x == 0) continue;
        g = gcd(g, x);
        if (g == 1) return;
    }
    if (g == 0 || g == 1) return;
    for (auto& x : row) x /= g;
}

IntRow to_int_row(const std::vector<mpq_class>& v) {
    mpz_class l = 1;
    for (const auto& x : v) l = lcm(l, x.get_den());
    IntRow row;
    row.reserve(v.size());
    for (const auto& x : v) row.push_back(x.get_num() * (l / x.get_den()));
    make_primitive(row);
    return row;
}

struct Echelon {
    std::vector<IntRow> rows;
    std::vector<size_t> pivots;
};

// Fraction-free row echelon form; rows are kept primitive to bound growth.
Echelon echelon(std::vector<IntRow> rows, size_t cols) {
    Echelon out;
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows.size(); ++col) {
        size_t pivot = rows.size();
        for (size_t r = rank; r < rows.size(); ++r) {
            if (rows[r][col] == 0) continue;
            if (pivot == rows.size() || abs(rows[r][col]) < abs(rows[pivot][col])) pivot = r;
            if (abs(rows[pivot][col]) == 1) break;
        }
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        const IntRow& pr = rows[rank];
        for (size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0) continue;
            const mpz_class g = gcd(pr[col], rows[r][col]);
            const mpz_class a = pr[col] / g;
            const mpz_class b = rows[r][col] / g;
            for (size_t c = col; c < cols; ++c) rows[r][c] = rows[r][c] * a - pr[c] * b;
            make_primitive(rows[r]);
        }
        out.pivots.push_back(col);
        ++rank;
    }
    rows.resize(rank);
    out.rows = std::move(rows);
    return out;
}

size_t rank_of(std::vector<IntRow> rows, size_t cols) { return echelon(std::move(rows), cols).rows.size(); }

// Basis of {x : M x = 0} over Q, as primitive integer vectors.
std::vector<IntRow> kernel(std::vector<IntRow> rows, size_t cols) {
    Echelon e = echelon(std::move(rows), cols);
    auto& R = e.rows;
    // Back-substitute so each pivot column is zero outside its own row.
    for (size_t i = R.size(); i-- > 0;) {
        const size_t pc = e.pivots[i];
        for (size_t j = 0; j < i; ++j) {
            if (R[j][pc] == 0) continue;
            const mpz_class g = gcd(R[i][pc], R[j][pc]);
            const mpz_class a = R[i][pc] / g;
            const mpz_class b = R[j][pc] / g;
            for (size_t c = 0; c < cols; ++c) R[j][c] = R[j][c] * a - R[i][c] * b;
            make_primitive(R[j]);
        }
    }
    std::vector<bool> is_pivot(cols, false);
    for (size_t pc : e.pivots) is_pivot[pc] = true;
    std::vector<IntRow> basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<mpq_class> v(cols, 0);
        v[f] = 1;
        for (size_t i = 0; i < R.size(); ++i) v[e.pivots[i]] = mpq_class(-R[i][f], R[i][e.pivots[i]]);
        for (auto& x : v) x.canonicalize();
        basis.push_back(to_int_row(v));
    }
    return basis;
}

std::vector<IntRow> joined(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.p != b.p || a.n != b.n) throw Error(ErrorKind::ShapeMismatch, "subspaces of different fields");
    std::vector<IntRow> rows = a.basis;
    rows.insert(rows.end(), b.basis.begin(), b.basis.end());
    return rows;
}

size_t field_dim(int p, int n) { return static_cast<size_t>(cyclotomic_degree(p, n)); }

}  // namespace

CycRationalElem::CycRationalElem(int p, int n, std::vector<mpq_class> coeffs)
    : p_(p), n_(n), coeffs_(std::move(coeffs)) {
    require_level(p, n);
    if (coeffs_.size() != field_dim(p, n))
        throw Error(ErrorKind::ShapeMismatch, "coefficient vector has length " + std::to_string(coeffs_.size()) +
                                                  ", expected " + std::to_string(field_dim(p, n)));
}

CycRationalElem CycRationalElem::zero(int p, int n) {
    require_level(p, n);
    return CycRationalElem(p, n, std::vector<mpq_class>(field_dim(p, n), 0));
}

CycRationalElem CycRationalElem::constant(int p, int n, const mpq_class& c) {
    CycRationalElem x = zero(p, n);
    x.coeffs_[0] = c;
    return x;
}

CycRationalElem CycRationalElem::zeta(int p, int n, int m, long e) {
    require_level(p, n);
    if (m < 0 || m > n) throw Error(ErrorKind::BadIndex, "root of unity level outside [0, n]");
    const long order = int_pow(p, n);
    std::vector<mpq_class> poly(static_cast<size_t>(order), 0);
    const long exponent = (((e % order) + order) % order) * int_pow(p, n - m) % order;
    poly[static_cast<size_t>(exponent)] = 1;
    return reduce(p, n, std::move(poly));
}

CycRationalElem CycRationalElem::reduce(int p, int n, std::vector<mpq_class> poly) {
    require_level(p, n);
    const size_t deg = field_dim(p, n);
    if (n == 0) {
        mpq_class total = 0;
        for (const auto& c : poly) total += c;
        return CycRationalElem(p, 0, {total});
    }
    const long step = int_pow(p, n - 1);
    for (size_t i = poly.size(); i-- > deg;) {
        const mpq_class c = poly[i];
        if (c == 0) continue;
        for (int j = 0; j + 1 < p; ++j) poly[i - deg + static_cast<size_t>(j * step)] -= c;
    }
    poly.resize(deg, 0);
    return CycRationalElem(p, n, std::move(poly));
}

CycRationalElem CycRationalElem::operator+(const CycRationalElem& y) const {
    if (p_ != y.p_ || n_ != y.n_) throw Error(ErrorKind::ShapeMismatch, "elements of different fields");
    std::vector<mpq_class> c = coeffs_;
    for (size_t i = 0; i < c.size(); ++i) c[i] += y.coeffs_[i];
    return CycRationalElem(p_, n_, std::move(c));
}

CycRationalElem CycRationalElem::operator-(const CycRationalElem& y) const { return *this + y.scaled(-1); }

CycRationalElem CycRationalElem::operator*(const CycRationalElem& y) const {
    if (p_ != y.p_ || n_ != y.n_) throw Error(ErrorKind::ShapeMismatch, "elements of different fields");
    const size_t d = coeffs_.size();
    std::vector<mpq_class> poly(2 * d - 1, 0);
    for (size_t i = 0; i < d; ++i) {
        if (coeffs_[i] == 0) continue;
        for (size_t j = 0; j < d; ++j)
            if (y.coeffs_[j] != 0) poly[i + j] += coeffs_[i] * y.coeffs_[j];
    }
    return reduce(p_, n_, std::move(poly));
}

CycRationalElem CycRationalElem::scaled(const mpq_class& c) const {
    std::vector<mpq_class> out = coeffs_;
    for (auto& x : out) x *= c;
    return CycRationalElem(p_, n_, std::move(out));
}

bool CycRationalElem::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpq_class& x) { return x == 0; });
}

CycRationalElem CycRationalElem::galois(long a) const {
    if (a % p_ == 0) throw Error(ErrorKind::InvalidResidue, "Galois exponent divisible by p");
    if (n_ == 0) return *this;
    const long order = int_pow(p_, n_);
    const long shift = ((a % order) + order) % order;
    std::vector<mpq_class> poly(static_cast<size_t>(order), 0);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) poly[static_cast<size_t>(shift * static_cast<long>(i) % order)] += coeffs_[i];
    return reduce(p_, n_, std::move(poly));
}

bool CycRationalElem::in_subfield(int m) const {
    if (m < 0 || m > n_) throw Error(ErrorKind::BadIndex, "subfield level outside [0, n]");
    const long step = int_pow(p_, n_ - m);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0 && static_cast<long>(i) % step != 0) return false;
    return true;
}

CycRationalElem pi_element(int p, int n, int i) {
    if (i < 0 || i > n) throw Error(ErrorKind::BadIndex, "pi index outside [0, n]");
    if (i == 0) return CycRationalElem::constant(p, n, 1);
    CycRationalElem z = CycRationalElem::zeta(p, n, i);
    if (i == 1) return z + CycRationalElem::constant(p, n, mpq_class(1, p - 1));
    return z;
}

CycRationalElem trace(const CycRationalElem& x, int m) {
    const int p = x.prime();
    const int n = x.level();
    if (m < 0 || m > n) throw Error(ErrorKind::BadIndex, "trace target outside [0, n]");
    const long order = int_pow(p, n);
    const long step = int_pow(p, m);
    CycRationalElem acc = CycRationalElem::zero(p, n);
    for (long a = 1; a < std::max(order, 2L); a += step) {
        if (a % p == 0) continue;
        acc = acc + x.galois(a);
    }
    return acc;
}

std::vector<CycRationalElem> galois_orbit(const CycRationalElem& x) {
    const long order = int_pow(x.prime(), x.level());
    std::vector<CycRationalElem> out;
    for (long a = 1; a < std::max(order, 2L); ++a)
        if (a % x.prime() != 0) out.push_back(x.galois(a));
    return out;
}

SubspaceBasis span(int p, int n, const std::vector<CycRationalElem>& vectors, std::string description) {
    std::vector<IntRow> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) {
        if (v.prime() != p || v.level() != n) throw Error(ErrorKind::ShapeMismatch, "vector from a different field");
        rows.push_back(to_int_row(v.coeffs()));
    }
    SubspaceBasis out;
    out.p = p;
    out.n = n;
    out.basis = echelon(std::move(rows), field_dim(p, n)).rows;
    out.description = std::move(description);
    return out;
}

SubspaceBasis sum(const SubspaceBasis& a, const SubspaceBasis& b) {
    SubspaceBasis out;
    out.p = a.p;
    out.n = a.n;
    out.basis = echelon(joined(a, b), field_dim(a.p, a.n)).rows;
    out.description = "(" + a.description + ") + (" + b.description + ")";
    return out;
}

size_t intersection_dim(const SubspaceBasis& a, const SubspaceBasis& b) {
    return a.rank() + b.rank() - rank_of(joined(a, b), field_dim(a.p, a.n));
}

bool contains(const SubspaceBasis& space, const CycRationalElem& x) {
    std::vector<IntRow> rows = space.basis;
    rows.push_back(to_int_row(x.coeffs()));
    return rank_of(std::move(rows), field_dim(space.p, space.n)) == space.rank();
}

bool subspaces_equal(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.rank() != b.rank()) return false;
    return rank_of(joined(a, b), field_dim(a.p, a.n)) == a.rank();
}

long piece_dim(int p, int i) {
    if (i < 0) throw Error(ErrorKind::BadIndex, "negative piece index");
    if (i == 0) return 1;
    if (i == 1) return p - 2;
    return int_pow(p, i - 2) * (p - 1) * (p - 1);
}

size_t orbit_rank(const CycRationalElem& x) { return span(x.prime(), x.level(), galois_orbit(x), "orbit").rank(); }

GaloisSpan galois_span_dim(int p, int n, const std::vector<mpq_class>& x) {
    if (static_cast<int>(x.size()) != n + 1) throw Error(ErrorKind::BadIndex, "need one coordinate per pi_i, i = 0..n");
    CycRationalElem e = CycRationalElem::zero(p, n);
    GaloisSpan out;
    for (int i = 0; i <= n; ++i) {
        if (x[static_cast<size_t>(i)] == 0) continue;
        e = e + pi_element(p, n, i).scaled(x[static_cast<size_t>(i)]);
        out.predicted += piece_dim(p, i);
    }
    out.rank = orbit_rank(e);
    return out;
}

GeneratedSpan generated_orbit_span(int p, int n, const std::vector<mpq_class>& a) {
    if (n < 1 || static_cast<int>(a.size()) != n + 1)
        throw Error(ErrorKind::BadIndex, "need coefficients a_0..a_n with n >= 1");
    if (a[1] == (p - 1) * a[0])
        throw Error(ErrorKind::HypothesisViolated, "a_1 = (p-1) a_0");
    CycRationalElem x = CycRationalElem::constant(p, n, a[0]);
    std::vector<CycRationalElem> generators{CycRationalElem::constant(p, n, 1)};
    std::string description = "Q";
    for (int r = 1; r <= n; ++r) {
        if (a[static_cast<size_t>(r)] == 0) continue;
        const CycRationalElem z = CycRationalElem::zeta(p, n, r);
        x = x + z.scaled(a[static_cast<size_t>(r)]);
        const auto orbit = galois_orbit(z);
        generators.insert(generators.end(), orbit.begin(), orbit.end());
        description += " + orbit(zeta_{p^" + std::to_string(r) + "})";
    }
    GeneratedSpan out;
    out.orbit_span = span(p, n, galois_orbit(x), "orbit of a_0 + sum a_i zeta_{p^i}");
    out.predicted = span(p, n, generators, description);
    out.matches = subspaces_equal(out.orbit_span, out.predicted);
    return out;
}

SubspaceBasis plus_minus_space(int p, int n, Sign sign) {
    require_level(p, n);
    if (n < 1) throw Error(ErrorKind::BadLevel, "plus/minus spaces need n >= 1");
    const size_t dim = field_dim(p, n);
    // Images of the basis vectors under each trace, computed once per level.
    std::vector<IntRow> constraints;
    std::string description = "Tr_{n/m+1}(x) in Q(zeta_{p^m}) for m in {";
    bool first = true;
    for (int m = sign == Sign::Plus ? 0 : 1; m <= n - 1; m += 2) {
        description += (first ? "" : ",") + std::to_string(m);
        first = false;
        std::vector<CycRationalElem> images;
        images.reserve(dim);
        for (size_t i = 0; i < dim; ++i) {
            std::vector<mpq_class> e(dim, 0);
            e[i] = 1;
            images.push_back(trace(CycRationalElem(p, n, std::move(e)), m + 1));
        }
        const long step = int_pow(p, n - m);
        for (size_t c = 0; c < dim; ++c) {
            if (static_cast<long>(c) % step == 0) continue;
            IntRow row(dim);
            bool nonzero = false;
            for (size_t i = 0; i < dim; ++i) {
                const mpq_class& v = images[i].coeffs()[c];
                // Traces of power-basis vectors are integral.
                row[i] = v.get_num();
                nonzero = nonzero || v != 0;
            }
            if (nonzero) constraints.push_back(std::move(row));
        }
    }
    description += "}";
    SubspaceBasis out;
    out.p = p;
    out.n = n;
    out.description = description;
    out.basis = echelon(kernel(std::move(constraints), dim), dim).rows;
    return out;
}

SubspaceBasis r_space(int p, int n, Sign sign) {
    require_level(p, n);
    if (n < 1) throw Error(ErrorKind::BadLevel, "R spaces need n >= 1");
    std::vector<CycRationalElem> generators{CycRationalElem::constant(p, n, 1)};
    std::string description = "Q";
    for (int m = sign == Sign::Plus ? 2 : 1; m <= n; m += 2) {
        const auto orbit = galois_orbit(CycRationalElem::zeta(p, n, m));
        generators.insert(generators.end(), orbit.begin(), orbit.end());
        description += " + orbit(zeta_{p^" + std::to_string(m) + "})";
    }
    return span(p, n, generators, description);
}

DimFormula dim_formula(int p, int n) {
    DimFormula f;
    f.plus = 1;
    for (int m = 1; 2 * m <= n; ++m) f.plus += int_pow(p, 2 * m - 2) * (p - 1) * (p - 1);
    f.minus = p - 1;
    for (int m = 1; 2 * m <= n - 1; ++m) f.minus += int_pow(p, 2 * m - 1) * (p - 1) * (p - 1);
    return f;
}

DimsTable dims_table(int p, int n) {
    DimsTable t;
    t.p = p;
    t.n = n;
    const SubspaceBasis qp = plus_minus_space(p, n, Sign::Plus);
    const SubspaceBasis qm = plus_minus_space(p, n, Sign::Minus);
    const SubspaceBasis rp = r_space(p, n, Sign::Plus);
    const SubspaceBasis rm = r_space(p, n, Sign::Minus);
    t.q_plus = qp.rank();
    t.q_minus = qm.rank();
    t.r_plus = rp.rank();
    t.r_minus = rm.rank();
    t.formula = dim_formula(p, n);
    t.coincide_plus = subspaces_equal(qp, rp);
    t.coincide_minus = subspaces_equal(qm, rm);
    return t;
}

USpaceReport u_space_dim(int p, int n) {
    require_level(p, n);
    if (n < 2) throw Error(ErrorKind::BadLevel, "U_n needs n >= 2");
    const long P = int_pow(p, n - 1);
    const size_t vars = static_cast<size_t>((p - 1) * P);
    auto var = [P](int sigma, long r) { return static_cast<size_t>(sigma * P + r); };

    std::vector<IntRow> rows;
    // Phi_t(gamma) | row_sigma  <=>  b_{r,sigma} = b_{r mod p^{t-1},sigma} for p^{t-1} <= r < p^t,
    // where b_{r,sigma} sums the coefficients at exponents congruent to r mod p^t.
    for (int t = 2; t < n; t += 2) {
        const long pt = int_pow(p, t);
        const long pt1 = int_pow(p, t - 1);
        for (int sigma = 0; sigma < p - 1; ++sigma) {
            for (long r = pt1; r < pt; ++r) {
                IntRow row(vars, 0);
                for (long s = r; s < P; s += pt) row[var(sigma, s)] += 1;
                for (long s = r % pt1; s < P; s += pt) row[var(sigma, s)] -= 1;
                rows.push_back(std::move(row));
            }
        }
    }
    for (int sigma = 1; sigma < p - 1; ++sigma) {
        IntRow row(vars, 0);
        for (long r = 0; r < P; ++r) {
            row[var(sigma, r)] += 1;
            row[var(0, r)] -= 1;
        }
        rows.push_back(std::move(row));
    }

    USpaceReport out;
    out.p = p;
    out.n = n;
    out.dim = static_cast<long>(vars) - static_cast<long>(rank_of(std::move(rows), vars));
    out.crt_count = static_cast<long>(vars) - (p - 2);
    out.count_upto_half = out.crt_count;
    for (int m = 1; 2 * m <= n; ++m) {
        const long c = (p - 1) * static_cast<long>(cyclotomic_degree(p, 2 * m));
        if (2 * m < n) out.crt_count -= c;
        out.count_upto_half -= c;
    }
    out.r_plus = static_cast<long>(r_space(p, n, Sign::Plus).rank());
    out.matches = out.dim == out.r_plus;
    return out;
}

}  // namespace iwa
