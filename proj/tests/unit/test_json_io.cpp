#include <functional>

#include "doctest.h"
#include "iwa/json_io.hpp"

using iwa::Json;
using iwa::PadicScalar;

namespace {

bool same_element(const iwa::QuadGroupRing& a, const iwa::QuadGroupRing& b) {
    if (a.prime() != b.prime() || a.level() != b.level()) return false;
    for (size_t i = 0; i < a.coeffs().size(); ++i) {
        const auto& x = a.coeffs()[i];
        const auto& y = b.coeffs()[i];
        if (!x.a().identical(y.a()) || !x.b().identical(y.b())) return false;
    }
    return true;
}

void check_malformed(const std::function<void()>& f) {
    try {
        f();
        FAIL("expected MalformedInput");
    } catch (const iwa::Error& e) {
        CHECK(e.kind() == iwa::ErrorKind::MalformedInput);
    }
}

}  // namespace

TEST_CASE("scalar encoding") {
    const int N = 30;
    const auto x = PadicScalar::from_rational(5, N, 7, 250);
    const Json j = iwa::encode(x);
    CHECK(j["p"] == 5);
    CHECK(j["N"] == N);
    CHECK(j["v"] == -3);
    CHECK(j["u"].is_string());
    CHECK(iwa::decode_padic(j).identical(x));

    const Json zero = iwa::encode(PadicScalar::zero(3, N));
    CHECK(zero["v"] == "inf");
    CHECK(iwa::decode_padic(zero).identical(PadicScalar::zero(3, N)));
    const auto approx_zero = PadicScalar::zero_at(3, N, 12);
    CHECK(iwa::decode_padic(iwa::encode(approx_zero)).identical(approx_zero));

    // digits beyond 64 bits survive as decimal strings
    const auto big = PadicScalar::from_integer(3, 60, mpz_class("123456789012345678901234567"));
    CHECK(iwa::decode_padic(iwa::encode(big)).identical(big));

    const Json minimal = Json::parse(R"({"p": 3, "N": 20, "v": 2, "u": "5"})");
    CHECK(iwa::decode_padic(minimal) == PadicScalar::from_int(3, 20, 45));
}

TEST_CASE("quadratic and group-ring encoding") {
    iwa::SplitMix64 rng(3);
    const auto pm = iwa::random_pm(3, 3, 3, 1, 40, rng);
    const auto pair = iwa::compose(pm);
    const auto back = iwa::decode_pair(iwa::encode(pair));
    CHECK(back.k == pair.k);
    CHECK(back.eps == pair.eps);
    CHECK(same_element(back.L1, pair.L1));
    CHECK(same_element(back.L2, pair.L2));
    REQUIRE(back.twists.size() == pair.twists.size());
    CHECK(same_element(back.twists[0].L1, pair.twists[0].L1));

    const auto pm_back = iwa::decode_pm(iwa::encode(pm));
    CHECK(same_element(pm_back.Lplus, pm.Lplus));
    CHECK(same_element(pm_back.Lminus, pm.Lminus));

    const auto f = iwa::phi(5, 2, 1, PadicScalar::one(5, 20));
    CHECK(iwa::decode_base_element(iwa::encode(f)) == f);
    const Json fj = iwa::encode(f);
    CHECK(fj["coeffs"].size() == 4);
    CHECK(fj["coeffs"][0].size() == 5);

    const iwa::CharacterSpec chi{1, 2, 4, 1};
    CHECK(iwa::decode_character(iwa::encode(chi)) == chi);
}

TEST_CASE("malformed input") {
    const Json good = iwa::encode(iwa::phi(3, 2, 1, PadicScalar::one(3, 20)));
    check_malformed([] { iwa::decode_padic(Json::parse(R"({"p": 4, "N": 20, "v": 0, "u": "1"})")); });
    check_malformed([] { iwa::decode_padic(Json::parse(R"({"p": 3, "N": 20, "v": 0, "u": "12x"})")); });
    check_malformed([] { iwa::decode_padic(Json::parse(R"({"p": 3, "N": 20, "v": 0, "u": "3"})")); });
    check_malformed([] { iwa::decode_padic(Json::parse(R"({"p": 3, "N": 20, "u": "1"})")); });
    check_malformed([] { iwa::decode_padic(Json::parse(R"([1, 2])")); });
    check_malformed([&] {
        Json bad = good;
        bad["coeffs"][0].erase(0);
        iwa::decode_base_element(bad);
    });
    check_malformed([&] {
        Json bad = good;
        bad["ring"] = "quad";
        iwa::decode_pm({{"k", 2}, {"eps", 1}, {"Lplus", bad}, {"Lminus", bad}});
    });
    check_malformed([&] { iwa::decode_pair({{"k", 2}, {"eps", 3}, {"L1", good}, {"L2", good}}); });
    check_malformed([&] { iwa::decode_pair({{"k", 1}, {"eps", 1}, {"L1", good}, {"L2", good}}); });
    check_malformed([] { iwa::read_json("/nonexistent/input.json"); });
}
