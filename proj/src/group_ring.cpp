#include "iwa/group_ring.hpp"

namespace iwa {

namespace {

long mod(long a, long n) { return ((a % n) + n) % n; }

template <class S>
S inv_p(const S& proto) {
    const PadicScalar base = proto.base_component();
    return proto.one_like().scaled(PadicScalar::one(base.prime(), base.cap()).mul_p_power(-1));
}

}  // namespace

template <class S>
GroupRingElem<S>::GroupRingElem(int p, int n, const S& proto)
    : p_(p), n_(n), P_(static_cast<int>(int_pow(p, n - 1))), zero_(proto.zero_like()) {
    if (n < 1) throw Error(ErrorKind::BadLevel, "group ring level must be >= 1");
    coeffs_.assign(static_cast<size_t>((p - 1) * P_), zero_);
}

template <class S>
GroupRingElem<S>::GroupRingElem(int p, int n, std::vector<S> coeffs) : p_(p), n_(n) {
    if (n < 1) throw Error(ErrorKind::BadLevel, "group ring level must be >= 1");
    P_ = static_cast<int>(int_pow(p, n - 1));
    if (coeffs.size() != static_cast<size_t>((p - 1) * P_))
        throw Error(ErrorKind::ShapeMismatch, "coefficient grid must be (p-1) x p^{n-1}");
    for (const auto& c : coeffs)
        if (c.prime() != p) throw Error(ErrorKind::ShapeMismatch, "coefficient over a different prime");
    zero_ = coeffs.front().zero_like();
    coeffs_ = std::move(coeffs);
}

template <class S>
GroupRingElem<S> GroupRingElem<S>::one(int p, int n, const S& proto) {
    return monomial(p, n, 0, 0, proto.one_like());
}

template <class S>
GroupRingElem<S> GroupRingElem<S>::monomial(int p, int n, int sigma, long r, const S& c) {
    GroupRingElem f(p, n, c);
    f.at(sigma, static_cast<int>(mod(r, f.P_))) = c;
    return f;
}

template <class S>
GroupRingElem<S> GroupRingElem<S>::from_gamma_poly(int p, int n, std::vector<S> poly) {
    if (poly.empty()) throw Error(ErrorKind::ShapeMismatch, "empty gamma polynomial");
    GroupRingElem f(p, n, poly.front());
    if (poly.size() != static_cast<size_t>(f.P_))
        throw Error(ErrorKind::ShapeMismatch, "gamma polynomial must have p^{n-1} coefficients");
    std::move(poly.begin(), poly.end(), f.coeffs_.begin());
    return f;
}

template <class S>
size_t GroupRingElem<S>::index(int sigma, long r) const {
    return static_cast<size_t>(mod(sigma, p_ - 1) * P_ + mod(r, P_));
}

template <class S>
std::vector<S> GroupRingElem<S>::row(int sigma) const {
    const auto begin = coeffs_.begin() + static_cast<long>(index(sigma, 0));
    return std::vector<S>(begin, begin + P_);
}

template <class S>
void GroupRingElem<S>::check_shape(const GroupRingElem& g) const {
    if (p_ != g.p_ || n_ != g.n_)
        throw Error(ErrorKind::ShapeMismatch, "group ring elements at different (p, n): (" + std::to_string(p_) +
                                                  ", " + std::to_string(n_) + ") vs (" + std::to_string(g.p_) +
                                                  ", " + std::to_string(g.n_) + ")");
}

template <class S>
GroupRingElem<S> GroupRingElem<S>::operator-() const {
    GroupRingElem r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

template <class S>
GroupRingElem<S> GroupRingElem<S>::operator+(const GroupRingElem& g) const {
    check_shape(g);
    GroupRingElem r = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += g.coeffs_[i];
    return r;
}

template <class S>
GroupRingElem<S> GroupRingElem<S>::operator-(const GroupRingElem& g) const {
    check_shape(g);
    GroupRingElem r = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= g.coeffs_[i];
    return r;
}

template <class S>
GroupRingElem<S> GroupRingElem<S>::operator*(const GroupRingElem& g) const {
    check_shape(g);
    struct Entry {
        int sigma;
        int r;
        const S* c;
    };
    auto support = [this](const GroupRingElem& x) {
        std::vector<Entry> out;
        for (int s = 0; s < p_ - 1; ++s)
            for (int r = 0; r < P_; ++r) {
                const S& c = x.coeffs_[static_cast<size_t>(s * P_ + r)];
                if (!c.is_zero()) out.push_back({s, r, &c});
            }
        return out;
    };
    const auto fs = support(*this);
    const auto gs = support(g);
    GroupRingElem out(p_, n_, zero_);
    for (const auto& a : fs)
        for (const auto& b : gs) {
            const int s = (a.sigma + b.sigma) % (p_ - 1);
            const int r = (a.r + b.r) % P_;
            out.coeffs_[static_cast<size_t>(s * P_ + r)] += *a.c * *b.c;
        }
    return out;
}

template <class S>
GroupRingElem<S> GroupRingElem<S>::scaled(const S& c) const {
    GroupRingElem r = *this;
    for (auto& x : r.coeffs_) x = x * c;
    return r;
}

template <class S>
GroupRingElem<S> GroupRingElem<S>::scaled_base(const PadicScalar& c) const {
    GroupRingElem r = *this;
    for (auto& x : r.coeffs_) x = x.scaled(c);
    return r;
}

template <class S>
bool GroupRingElem<S>::operator==(const GroupRingElem& g) const {
    check_shape(g);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (!(coeffs_[i] == g.coeffs_[i])) return false;
    return true;
}

template <class S>
bool GroupRingElem<S>::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

std::vector<PadicScalar> delta_character_table(int p, int cap) {
    const PadicScalar w = teichmuller(p, cap, primitive_root(p));
    std::vector<PadicScalar> table{PadicScalar::one(p, cap)};
    for (int s = 1; s < p - 1; ++s) table.push_back(table.back() * w);
    return table;
}

GroupRingElem<QuadExtScalar> promote(const GroupRingElem<PadicScalar>& f, const PadicScalar& s) {
    std::vector<QuadExtScalar> c;
    c.reserve(f.coeffs().size());
    for (const auto& x : f.coeffs()) c.push_back(QuadExtScalar::from_base(x, s));
    return GroupRingElem<QuadExtScalar>(f.prime(), f.level(), std::move(c));
}

template <class S>
GroupRingElem<S> phi(int p, int n, int m, const S& proto) {
    if (m < 1) throw Error(ErrorKind::BadLevel, "Phi_m needs m >= 1");
    if (m >= n) return GroupRingElem<S>::monomial(p, n, 0, 0, proto.from_int_like(p));
    GroupRingElem<S> f(p, n, proto);
    const long step = int_pow(p, m - 1);
    for (int i = 0; i < p; ++i) f.at(0, static_cast<int>(i * step)) = proto.one_like();
    return f;
}

template <class S>
GroupRingElem<S> twisted_phi(int p, int n, int m, long j, const S& proto) {
    if (m < 1) throw Error(ErrorKind::BadLevel, "Phi_m needs m >= 1");
    const PadicScalar u = gamma_unit(p, scalar_cap(proto));
    const long step = int_pow(p, m - 1);
    const PadicScalar base = u.pow(-j * step);
    GroupRingElem<S> f(p, n, proto);
    PadicScalar w = PadicScalar::one(p, scalar_cap(proto));
    for (int i = 0; i < p; ++i) {
        f.at(0, static_cast<int>(mod(i * step, f.gamma_order()))) += proto.one_like().scaled(w);
        w = w * base;
    }
    return f;
}

template <class S>
GroupRingElem<S> twist_gamma(const GroupRingElem<S>& f, long j) {
    if (j == 0) return f;
    const PadicScalar t = gamma_unit(f.prime(), scalar_cap(f.proto())).pow(-j);
    GroupRingElem<S> out = f;
    PadicScalar w = PadicScalar::one(f.prime(), scalar_cap(f.proto()));
    for (int r = 0; r < f.gamma_order(); ++r) {
        for (int s = 0; s < f.delta_order(); ++s)
            if (!out.at(s, r).is_zero()) out.at(s, r) = out.at(s, r).scaled(w);
        w = w * t;
    }
    return out;
}

template <class S>
GroupRingElem<S> twist_full(const GroupRingElem<S>& f, long r) {
    if (r == 0) return f;
    const int p = f.prime();
    const int cap = scalar_cap(f.proto());
    const PadicScalar t = gamma_unit(p, cap).pow(r);
    const auto omega = delta_character_table(p, cap);
    GroupRingElem<S> out = f;
    PadicScalar w = PadicScalar::one(p, cap);
    for (int rr = 0; rr < f.gamma_order(); ++rr) {
        for (int s = 0; s < f.delta_order(); ++s)
            if (!out.at(s, rr).is_zero())
                out.at(s, rr) = out.at(s, rr).scaled(w * omega[static_cast<size_t>(mod(r * s, p - 1))]);
        w = w * t;
    }
    return out;
}

template <class S>
std::vector<S> delta_component(const GroupRingElem<S>& f, int d) {
    const int p = f.prime();
    const auto omega = delta_character_table(p, scalar_cap(f.proto()));
    std::vector<S> out(static_cast<size_t>(f.gamma_order()), f.proto());
    for (int s = 0; s < p - 1; ++s) {
        const PadicScalar& w = omega[static_cast<size_t>(mod(static_cast<long>(d) * s, p - 1))];
        for (int r = 0; r < f.gamma_order(); ++r)
            if (!f.at(s, r).is_zero()) out[static_cast<size_t>(r)] += f.at(s, r).scaled(w);
    }
    return out;
}

template <class S>
GroupRingElem<S> delta_embed(int p, int n, const std::vector<S>& component, int d) {
    if (component.empty()) throw Error(ErrorKind::ShapeMismatch, "empty Delta component");
    GroupRingElem<S> f(p, n, component.front());
    if (component.size() != static_cast<size_t>(f.gamma_order()))
        throw Error(ErrorKind::ShapeMismatch, "Delta component must have p^{n-1} entries");
    const int cap = scalar_cap(component.front());
    const auto omega = delta_character_table(p, cap);
    const PadicScalar norm = PadicScalar::from_int(p, cap, p - 1).inv();
    for (int s = 0; s < p - 1; ++s) {
        const PadicScalar w = omega[static_cast<size_t>(mod(-static_cast<long>(d) * s, p - 1))] * norm;
        for (int r = 0; r < f.gamma_order(); ++r) f.at(s, r) = component[static_cast<size_t>(r)].scaled(w);
    }
    return f;
}

template <class S>
BsumTable<S> b_sums(const GroupRingElem<S>& f, int m) {
    if (m < 1 || m >= f.level())
        throw Error(ErrorKind::BadLevel, "b-sums need 1 <= m < n (m = " + std::to_string(m) + ", n = " +
                                             std::to_string(f.level()) + ")");
    const int p = f.prime();
    const long pm = int_pow(p, m);
    BsumTable<S> table{p, m, {}};
    table.values.assign(static_cast<size_t>(p - 1), std::vector<S>(static_cast<size_t>(pm), f.proto()));
    for (int s = 0; s < p - 1; ++s)
        for (int r = 0; r < f.gamma_order(); ++r)
            if (!f.at(s, r).is_zero()) table.values[static_cast<size_t>(s)][static_cast<size_t>(r % pm)] += f.at(s, r);
    return table;
}

template <class S>
bool divisible_by_phi(const GroupRingElem<S>& f, int m) {
    const BsumTable<S> b = b_sums(f, m);
    const long coarse = int_pow(f.prime(), m - 1);
    for (const auto& row : b.values)
        for (size_t r = static_cast<size_t>(coarse); r < row.size(); ++r)
            if (!(row[r] == row[r % static_cast<size_t>(coarse)])) return false;
    return true;
}

template <class S>
bool is_plus_admissible(const GroupRingElem<S>& f) {
    std::vector<S> sums;
    for (int s = 0; s < f.delta_order(); ++s) {
        S total = f.proto();
        for (int r = 0; r < f.gamma_order(); ++r) total += f.at(s, r);
        sums.push_back(total);
    }
    for (const auto& x : sums)
        if (!(x == sums.front())) return false;
    return true;
}

void require_crt_precision(int cap, int n) {
    if (cap < n + 10)
        throw Error(ErrorKind::PrecisionExhausted, "CRT operations at level n = " + std::to_string(n) +
                                                       " need precision cap >= " + std::to_string(n + 10) +
                                                       ", have " + std::to_string(cap));
}

template <class S>
std::vector<CyclotomicScalar<S>> crt_component(const GroupRingElem<S>& f, int m) {
    const int p = f.prime();
    if (m < 0 || m >= f.level()) throw Error(ErrorKind::BadLevel, "CRT slot index out of range");
    require_crt_precision(scalar_cap(f.proto()), f.level());
    const auto omega = delta_character_table(p, scalar_cap(f.proto()));
    std::vector<CyclotomicScalar<S>> rows;
    for (int s = 0; s < p - 1; ++s) rows.push_back(CyclotomicScalar<S>::reduce(p, m, f.row(s)));
    std::vector<CyclotomicScalar<S>> out;
    for (int d = 0; d < p - 1; ++d) {
        auto acc = CyclotomicScalar<S>::zero(p, m, f.proto());
        for (int s = 0; s < p - 1; ++s) {
            if (rows[static_cast<size_t>(s)].is_zero()) continue;
            acc = acc + rows[static_cast<size_t>(s)].scaled(
                            f.proto().one_like().scaled(omega[static_cast<size_t>((d * s) % (p - 1))]));
        }
        out.push_back(std::move(acc));
    }
    return out;
}

template <class S>
CrtDecomposition<S> crt_decompose(const GroupRingElem<S>& f) {
    CrtDecomposition<S> parts{f.prime(), f.level(), {}};
    for (int m = 0; m < f.level(); ++m) parts.slots.push_back(crt_component(f, m));
    return parts;
}

template <class S>
GroupRingElem<S> crt_reconstruct(const CrtDecomposition<S>& parts) {
    const int p = parts.p;
    const int n = parts.n;
    if (static_cast<int>(parts.slots.size()) != n)
        throw Error(ErrorKind::ShapeMismatch, "CRT reconstruction needs one slot per level 0..n-1");
    for (int m = 0; m < n; ++m) {
        const auto& level = parts.slots[static_cast<size_t>(m)];
        if (static_cast<int>(level.size()) != p - 1)
            throw Error(ErrorKind::ShapeMismatch, "CRT slot needs p-1 Delta components");
        for (const auto& c : level)
            if (c.prime() != p || c.level() != m) throw Error(ErrorKind::ShapeMismatch, "CRT component at wrong level");
    }
    const S proto = parts.slots[0][0][0].zero_like();
    const int cap = scalar_cap(proto);
    require_crt_precision(cap, n);
    const auto omega = delta_character_table(p, cap);
    const PadicScalar norm = PadicScalar::from_int(p, cap, p - 1).inv();

    // Undo the Delta transform: row_sigma at level m.
    std::vector<std::vector<CyclotomicScalar<S>>> rows(static_cast<size_t>(p - 1));
    for (int s = 0; s < p - 1; ++s)
        for (int m = 0; m < n; ++m) {
            auto acc = CyclotomicScalar<S>::zero(p, m, proto);
            for (int d = 0; d < p - 1; ++d) {
                const auto& c = parts.slots[static_cast<size_t>(m)][static_cast<size_t>(d)];
                if (c.is_zero()) continue;
                acc = acc + c.scaled(proto.one_like().scaled(omega[static_cast<size_t>(mod(-d * s, p - 1))] * norm));
            }
            rows[static_cast<size_t>(s)].push_back(std::move(acc));
        }

    // 1/(zeta_p - 1) = p^{-1} sum_{i=1}^{p-1} i zeta_p^i, zeta_p = zeta_{p^j}^{p^{j-1}}.
    auto inverse_at = [&](int j) {
        const long step = int_pow(p, j - 1);
        std::vector<S> poly(static_cast<size_t>(int_pow(p, j)), proto);
        for (int i = 1; i < p; ++i) poly[static_cast<size_t>(i * step)] = proto.from_int_like(i) * inv_p(proto);
        return CyclotomicScalar<S>::reduce(p, j, std::move(poly));
    };
    std::vector<CyclotomicScalar<S>> inverses;
    for (int j = 1; j < n; ++j) inverses.push_back(inverse_at(j));

    GroupRingElem<S> out(p, n, proto);
    for (int s = 0; s < p - 1; ++s) {
        std::vector<S> a{rows[static_cast<size_t>(s)][0][0]};
        for (int j = 1; j < n; ++j) {
            const long half = int_pow(p, j - 1);
            const auto reduced = CyclotomicScalar<S>::reduce(p, j, a);
            const auto t = (rows[static_cast<size_t>(s)][static_cast<size_t>(j)] - reduced) *
                           inverses[static_cast<size_t>(j - 1)];
            a.resize(static_cast<size_t>(int_pow(p, j)), proto);
            for (int i = 0; i < t.degree(); ++i) {
                if (t[i].is_zero()) continue;
                a[static_cast<size_t>(i + half)] += t[i];
                a[static_cast<size_t>(i)] -= t[i];
            }
        }
        for (int r = 0; r < out.gamma_order(); ++r) out.at(s, r) = a[static_cast<size_t>(r)];
    }
    return out;
}

template <class S>
GroupRingElem<S> divide_exact(const GroupRingElem<S>& f, int m, QuotientRep rep) {
    if (m < 1) throw Error(ErrorKind::BadLevel, "Phi_m needs m >= 1");
    const int p = f.prime();
    if (m >= f.level()) return f.scaled(inv_p(f.proto()));
    if (!divisible_by_phi(f, m))
        throw Error(ErrorKind::NotDivisible, "element is not divisible by Phi_" + std::to_string(m) + "(gamma)");

    const int P = f.gamma_order();
    const int deg = cyclotomic_degree(p, m);
    const long step = int_pow(p, m - 1);
    GroupRingElem<S> q(p, f.level(), f.proto());
    for (int s = 0; s < p - 1; ++s) {
        std::vector<S> rem = f.row(s);
        for (int i = P - 1; i >= deg; --i) {
            const S c = rem[static_cast<size_t>(i)];
            if (c.is_zero()) continue;
            q.at(s, i - deg) = c;
            for (int j = 0; j < p; ++j) rem[static_cast<size_t>(i - deg + j * step)] -= c;
        }
        for (int i = 0; i < deg; ++i)
            if (!rem[static_cast<size_t>(i)].is_zero())
                throw Error(ErrorKind::NotDivisible, "long division by Phi_" + std::to_string(m) +
                                                         " left a nonzero remainder at working precision");
    }
    if (rep == QuotientRep::LowDegree) return q;

    auto parts = crt_decompose(q);
    for (auto& c : parts.slots[static_cast<size_t>(m)]) c = CyclotomicScalar<S>::zero(p, m, f.proto());
    return crt_reconstruct(parts);
}

template <class S>
GroupRingElem<S> invert_unit(const GroupRingElem<S>& f) {
    auto parts = crt_decompose(f);
    for (size_t m = 0; m < parts.slots.size(); ++m)
        for (size_t d = 0; d < parts.slots[m].size(); ++d) {
            auto& c = parts.slots[m][d];
            if (c.is_zero())
                throw Error(ErrorKind::NotAUnit,
                            "CRT component (m = " + std::to_string(m) + ", d = " + std::to_string(d) + ") vanishes");
            try {
                c = c.inv();
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::DivideByZero) throw Error(ErrorKind::NotAUnit, e.what());
                throw;
            }
        }
    GroupRingElem<S> g = crt_reconstruct(parts);
    if (!(f * g == GroupRingElem<S>::one(f.prime(), f.level(), f.proto())))
        throw Error(ErrorKind::PrecisionExhausted, "inverse failed the re-multiplication check");
    return g;
}

int64_t min_valuation(const GroupRingElem<PadicScalar>& f) {
    int64_t v = PadicScalar::kInfinity;
    for (const auto& c : f.coeffs()) v = std::min(v, c.valuation());
    return v;
}

template class GroupRingElem<PadicScalar>;
template class GroupRingElem<QuadExtScalar>;

#define IWA_INSTANTIATE(S)                                                                             \
    template GroupRingElem<S> phi(int, int, int, const S&);                                            \
    template GroupRingElem<S> twisted_phi(int, int, int, long, const S&);                              \
    template GroupRingElem<S> twist_gamma(const GroupRingElem<S>&, long);                              \
    template GroupRingElem<S> twist_full(const GroupRingElem<S>&, long);                               \
    template std::vector<S> delta_component(const GroupRingElem<S>&, int);                             \
    template GroupRingElem<S> delta_embed(int, int, const std::vector<S>&, int);                       \
    template BsumTable<S> b_sums(const GroupRingElem<S>&, int);                                        \
    template bool divisible_by_phi(const GroupRingElem<S>&, int);                                      \
    template bool is_plus_admissible(const GroupRingElem<S>&);                                         \
    template std::vector<CyclotomicScalar<S>> crt_component(const GroupRingElem<S>&, int);             \
    template CrtDecomposition<S> crt_decompose(const GroupRingElem<S>&);                               \
    template GroupRingElem<S> crt_reconstruct(const CrtDecomposition<S>&);                             \
    template GroupRingElem<S> divide_exact(const GroupRingElem<S>&, int, QuotientRep);                 \
    template GroupRingElem<S> invert_unit(const GroupRingElem<S>&);

IWA_INSTANTIATE(PadicScalar)
IWA_INSTANTIATE(QuadExtScalar)

#undef IWA_INSTANTIATE

}  // namespace iwa
