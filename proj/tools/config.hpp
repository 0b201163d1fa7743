#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "codedconv/planner.hpp"
#include "codedconv/straggler_sim.hpp"

namespace codedconv::cli {

struct ExperimentConfig {
    ProblemSpec spec;
    std::vector<Strategy> strategies;
    TimeModel model;
    std::vector<double> deadlines;
    long trials = 100000;
    std::uint64_t seed = 1;
};

// Parses and fully validates the JSON config; unknown keys are rejected.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

std::string strategy_label(const Strategy& strategy);

}  // namespace codedconv::cli
