#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace strictq {

struct ReproOptions {
    std::uint64_t seed = 0;
    int samples = 1000;
    unsigned threads = 0;
    int max_n = 0; // 0 selects the claim's default bound
};

struct ReproReport {
    std::string claim;
    bool pass = false;
    std::string summary;
    std::vector<std::string> failures; // counterexamples, empty on PASS
    nlohmann::ordered_json data;
};

/// Claim ids, in the order `repro --claim all` runs them.
const std::vector<std::string>& repro_claims();

/// Runs one reproduction experiment. Throws UsageError for an unknown id.
ReproReport repro(std::string_view claim, const ReproOptions& opts = {});

} // namespace strictq
