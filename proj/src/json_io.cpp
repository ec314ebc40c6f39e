#include "iwa/json_io.hpp"

#include <fstream>
#include <iostream>

#include "iwa/error.hpp"

namespace iwa {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::MalformedInput, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) malformed(std::string("expected an object holding \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end()) malformed(std::string("missing field \"") + key + "\"");
    return *it;
}

long integer(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) malformed(std::string("field \"") + key + "\" must be an integer");
    return v.get<long>();
}

int small_integer(const Json& j, const char* key, long lo, long hi) {
    const long v = integer(j, key);
    if (v < lo || v > hi)
        malformed(std::string("field \"") + key + "\" = " + std::to_string(v) + " outside [" + std::to_string(lo) +
                  ", " + std::to_string(hi) + "]");
    return static_cast<int>(v);
}

bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

int read_prime(const Json& j) {
    const int p = small_integer(j, "p", 3, 1000003);
    if (!is_odd_prime(p)) malformed("p = " + std::to_string(p) + " is not an odd prime");
    return p;
}

template <class S, class Decode>
GroupRingElem<S> decode_grid(const Json& j, Decode decode) {
    const int p = read_prime(j);
    const int n = small_integer(j, "n", 1, 12);
    const Json& rows = field(j, "coeffs");
    const long P = int_pow(p, n - 1);
    if (!rows.is_array() || static_cast<long>(rows.size()) != p - 1)
        malformed("coeffs must hold p - 1 = " + std::to_string(p - 1) + " rows");
    std::vector<S> coeffs;
    coeffs.reserve(static_cast<size_t>((p - 1) * P));
    for (const Json& row : rows) {
        if (!row.is_array() || static_cast<long>(row.size()) != P)
            malformed("each coeffs row must hold p^{n-1} = " + std::to_string(P) + " scalars");
        for (const Json& c : row) {
            S x = decode(c);
            if (x.prime() != p) malformed("coefficient prime differs from element prime");
            coeffs.push_back(std::move(x));
        }
    }
    return GroupRingElem<S>(p, n, std::move(coeffs));
}

template <class S>
Json encode_grid(const GroupRingElem<S>& f, const char* ring) {
    Json rows = Json::array();
    for (int sigma = 0; sigma < f.delta_order(); ++sigma) {
        Json row = Json::array();
        for (int r = 0; r < f.gamma_order(); ++r) row.push_back(encode(f.at(sigma, r)));
        rows.push_back(std::move(row));
    }
    return {{"p", f.prime()}, {"n", f.level()}, {"ring", ring}, {"coeffs", std::move(rows)}};
}

template <class S>
Json encode_cyclotomic(const CyclotomicScalar<S>& x) {
    Json coeffs = Json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back(encode(c));
    return {{"p", x.prime()}, {"m", x.level()}, {"coeffs", std::move(coeffs)}};
}

void check_pair_context(int k, long eps, int p) {
    if (k < 2) malformed("k must be >= 2");
    if (eps % p == 0) malformed("eps must be prime to p");
}

std::vector<int> level_list(const Json& j, const char* key) {
    std::vector<int> out;
    auto it = j.find(key);
    if (it == j.end()) return out;
    if (!it->is_array()) malformed(std::string("\"") + key + "\" must be an array");
    for (const Json& v : *it) {
        if (!v.is_number_integer()) malformed(std::string("\"") + key + "\" entries must be integers");
        out.push_back(v.get<int>());
    }
    return out;
}

// Working precision N read from an element's first coefficient.
int element_cap(const Json& element) {
    const Json& rows = field(element, "coeffs");
    if (!rows.is_array() || rows.empty() || !rows[0].is_array() || rows[0].empty())
        malformed("element has no coefficients");
    const Json& c = rows[0][0];
    return small_integer(c.contains("a") ? field(c, "a") : c, "N", 1, 100000);
}

}  // namespace

Json encode(const PadicScalar& x) {
    Json j = {{"p", x.prime()}, {"N", x.cap()}};
    if (x.is_zero()) {
        if (x.absolute_precision() >= PadicScalar::kInfinity)
            j["v"] = "inf";
        else
            j["v"] = x.absolute_precision();
        j["u"] = "0";
        j["prec"] = 0;
        return j;
    }
    j["v"] = x.valuation();
    j["u"] = x.unit().get_str();
    j["prec"] = x.relative_precision();
    return j;
}

Json encode(const QuadExtScalar& x) { return {{"a", encode(x.a())}, {"b", encode(x.b())}, {"s", encode(x.s())}}; }

Json encode(const GroupRingElem<PadicScalar>& f) { return encode_grid(f, "base"); }
Json encode(const GroupRingElem<QuadExtScalar>& f) { return encode_grid(f, "quad"); }
Json encode(const CyclotomicScalar<PadicScalar>& x) { return encode_cyclotomic(x); }
Json encode(const CyclotomicScalar<QuadExtScalar>& x) { return encode_cyclotomic(x); }

Json encode(const CharacterSpec& chi) { return {{"d", chi.d}, {"m", chi.m}, {"e", chi.e}, {"r", chi.r}}; }

Json encode(const AdmissiblePair& pair) {
    Json twists = Json::array();
    for (const auto& t : pair.twists) twists.push_back({{"r", t.r}, {"L1", encode(t.L1)}, {"L2", encode(t.L2)}});
    return {{"k", pair.k}, {"eps", pair.eps}, {"L1", encode(pair.L1)}, {"L2", encode(pair.L2)}, {"twists", twists}};
}

Json encode(const PMDecomposition& pm) {
    return {{"k", pm.k},
            {"eps", pm.eps},
            {"Lplus", encode(pm.Lplus)},
            {"Lminus", encode(pm.Lminus)},
            {"plus_levels", pm.plus_levels},
            {"minus_levels", pm.minus_levels}};
}

PadicScalar decode_padic(const Json& j) {
    const int p = read_prime(j);
    const int cap = small_integer(j, "N", 1, 100000);
    const Json& v = field(j, "v");
    const Json& u = field(j, "u");
    if (!u.is_string()) malformed("\"u\" must be a decimal string");
    mpz_class unit;
    if (unit.set_str(u.get<std::string>(), 10) != 0) malformed("\"u\" is not a decimal integer: " + u.get<std::string>());
    const bool infinite = v.is_string() && v.get<std::string>() == "inf";
    if (!infinite && !v.is_number_integer()) malformed("\"v\" must be an integer or \"inf\"");
    if (unit == 0) {
        if (infinite) return PadicScalar::zero(p, cap);
        return PadicScalar::zero_at(p, cap, v.get<int64_t>());
    }
    if (infinite) malformed("nonzero unit with infinite valuation");
    const int prec = j.contains("prec") ? small_integer(j, "prec", 1, cap) : cap;
    if (unit % p == 0) malformed("\"u\" must be prime to p");
    return PadicScalar::from_parts(p, cap, v.get<int64_t>(), unit, prec);
}

QuadExtScalar decode_quad(const Json& j) {
    PadicScalar a = decode_padic(field(j, "a"));
    PadicScalar b = decode_padic(field(j, "b"));
    PadicScalar s = decode_padic(field(j, "s"));
    if (a.prime() != b.prime() || a.prime() != s.prime()) malformed("quadratic components over different primes");
    return QuadExtScalar(std::move(a), std::move(b), std::move(s));
}

GroupRingElem<PadicScalar> decode_base_element(const Json& j) {
    const Json& ring = field(j, "ring");
    if (ring != "base") malformed("expected a \"base\" group-ring element");
    return decode_grid<PadicScalar>(j, decode_padic);
}

GroupRingElem<QuadExtScalar> decode_quad_element(const Json& j, const PadicScalar* s) {
    const Json& ring = field(j, "ring");
    if (ring == "base") {
        if (s == nullptr) malformed("base element where a quadratic one is required");
        return promote(decode_base_element(j), *s);
    }
    if (ring != "quad") malformed("\"ring\" must be \"base\" or \"quad\"");
    auto f = decode_grid<QuadExtScalar>(j, decode_quad);
    if (s != nullptr)
        for (const auto& c : f.coeffs())
            if (!(c.s() == *s)) malformed("coefficient alpha^2 differs from the pair's alpha^2");
    return f;
}

CharacterSpec decode_character(const Json& j) {
    CharacterSpec chi;
    chi.d = small_integer(j, "d", -1000000, 1000000);
    chi.m = small_integer(j, "m", 0, 12);
    chi.e = j.contains("e") ? integer(j, "e") : 1;
    chi.r = j.contains("r") ? small_integer(j, "r", 0, 1000) : 0;
    return chi;
}

AdmissiblePair decode_pair(const Json& j) {
    const int k = small_integer(j, "k", 2, 1000);
    const long eps = integer(j, "eps");
    const Json& l1 = field(j, "L1");
    const int p = read_prime(l1);
    check_pair_context(k, eps, p);
    const PadicScalar s = pair_alpha_square(p, element_cap(l1), k, eps);
    AdmissiblePair pair{k, eps, decode_quad_element(l1, &s), decode_quad_element(field(j, "L2"), &s), {}};
    if (pair.L2.prime() != p || pair.L2.level() != pair.L1.level()) malformed("L1 and L2 differ in shape");
    if (auto it = j.find("twists"); it != j.end()) {
        if (!it->is_array()) malformed("\"twists\" must be an array");
        for (const Json& t : *it) {
            TwistedImage image{small_integer(t, "r", 1, k - 2), decode_quad_element(field(t, "L1"), &s),
                               decode_quad_element(field(t, "L2"), &s)};
            if (image.L1.level() != pair.L1.level() || image.L2.level() != pair.L1.level())
                malformed("twisted image at a different level");
            pair.twists.push_back(std::move(image));
        }
    }
    return pair;
}

PMDecomposition decode_pm(const Json& j) {
    const int k = small_integer(j, "k", 2, 1000);
    const long eps = integer(j, "eps");
    const Json& lp = field(j, "Lplus");
    const int p = read_prime(lp);
    check_pair_context(k, eps, p);
    const PadicScalar s = pair_alpha_square(p, element_cap(lp), k, eps);
    PMDecomposition pm{k,
                       eps,
                       decode_quad_element(lp, &s),
                       decode_quad_element(field(j, "Lminus"), &s),
                       level_list(j, "plus_levels"),
                       level_list(j, "minus_levels")};
    if (pm.Lminus.prime() != p || pm.Lminus.level() != pm.Lplus.level()) malformed("Lplus and Lminus differ in shape");
    return pm;
}

Json read_json(const std::string& path) {
    try {
        if (path == "-") return Json::parse(std::cin);
        std::ifstream in(path);
        if (!in) malformed("cannot open " + path);
        return Json::parse(in);
    } catch (const Json::exception& e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
}

void write_json(const std::string& path, const Json& j) {
    if (path == "-" || path.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::MalformedInput, "cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace iwa
