#pragma once

// The acceptance suite: ten end-to-end checks with pinned tolerances read from the config.

#include "polyprog/cli/config.hpp"

#include <functional>
#include <string>
#include <vector>

namespace polyprog {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double seconds = 0;
    double max_seconds = 0;
    std::string summary;   // one line of measured values
    nlohmann::json detail;
};

struct AcceptanceOptions {
    std::vector<int> only;  // empty runs all
    unsigned threads = 1;
    std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_acceptance(const Config& cfg, const AcceptanceOptions& opt = {});

/// "PASS  5 counting trend  [1.62 s]  ..." style line.
std::string format_result(const CriterionResult& r);

nlohmann::json to_json(const CriterionResult& r);

}  // namespace polyprog
