#pragma once

// JSON config parsing for the CLI. Config shapes are documented in README.md.

#include <nlohmann/json.hpp>
#include <string>

#include "vaxwane/mc/harness.hpp"
#include "vaxwane/sim/cohort.hpp"

namespace vaxwane::cli {

nlohmann::json load_json_file(const std::string& path);

/// {"n_subjects":..., "seed":..., "hazard":{"mechanism":"waning",...}, ...}
sim::CohortConfig parse_cohort_config(const nlohmann::json& j);

/// {"B":..., "base_seed":..., "cells":[...], "alphas":[...], ...}
mc::ExperimentConfig parse_experiment_config(const nlohmann::json& j);

/// Stable digest of the canonicalized config for the run manifest.
std::string config_hash(const nlohmann::json& j);

}  // namespace vaxwane::cli
