#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sglab/config.hpp"

namespace sglab {

struct SuiteResult {
    std::string name;
    bool pass = true;
    nlohmann::ordered_json report;
    // extra artifacts: (file name, contents), CSV plot data mostly
    std::vector<std::pair<std::string, std::string>> files;
};

const std::vector<std::string>& suite_names();

// semigroup | resolvent | bounds | fixedpoint | simulate | uniqueness |
// zygmund | all.  Deterministic: identical config -> identical report bytes.
SuiteResult run_suite(const std::string& name, const ExperimentConfig& cfg);

}  // namespace sglab
