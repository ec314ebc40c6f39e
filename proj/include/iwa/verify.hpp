#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iwa/json_io.hpp"
#include "iwa/parallel.hpp"

namespace iwa {

struct VerifyConfig {
    int p = 3;
    int k = 3;
    int n = 4;
    int cap = 40;
    long eps = 1;
    uint64_t seed = 1;
    ScanOptions scan;
};

/// all, lin, padic, dims, vanish, roundtrip, admissible.
const std::vector<std::string>& suite_names();

/// {"suite", "checks", "passed", "results": [{"name", "property", "passed", "cases", "detail"}]}.
/// "all" nests one report per suite under "suites". Unknown names throw MalformedInput.
Json run_suite(const std::string& suite, const VerifyConfig& config);

}  // namespace iwa
