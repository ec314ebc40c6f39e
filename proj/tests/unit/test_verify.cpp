#include "doctest.h"
#include "iwa/verify.hpp"

TEST_CASE("every suite passes on a small configuration") {
    iwa::VerifyConfig cfg;
    cfg.n = 3;
    cfg.k = 3;
    for (const auto& name : iwa::suite_names()) {
        CAPTURE(name);
        const auto report = iwa::run_suite(name, cfg);
        CHECK(report["passed"].get<bool>());
        CHECK(report["suite"] == name);
    }
}

TEST_CASE("reports are reproducible and name their checks") {
    iwa::VerifyConfig cfg;
    cfg.seed = 42;
    cfg.n = 3;
    const auto a = iwa::run_suite("roundtrip", cfg);
    const auto b = iwa::run_suite("roundtrip", cfg);
    CHECK(a.dump() == b.dump());
    for (const auto& r : a["results"]) {
        CHECK(!r["property"].get<std::string>().empty());
        CHECK(r["cases"].get<size_t>() > 0);
    }
    cfg.p = 5;
    cfg.n = 2;
    const auto dims = iwa::run_suite("dims", cfg);
    CHECK(dims["table"][1]["Qplus"] == 17);
    CHECK(dims["table"][1]["Qminus"] == 4);
}

TEST_CASE("unknown suite") { CHECK_THROWS_AS(iwa::run_suite("everything", {}), iwa::Error); }
