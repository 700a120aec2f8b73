#pragma once

#include <optional>
#include <string>

namespace vaxwane::cli {

struct SimulateArgs {
  std::string config_path;
  std::string out_path;
  std::string dated_dir;  // optional: also emit a dated raw-cohort CSV + schema
};

struct ExperimentArgs {
  std::string config_path;  // mutually exclusive with paper_grid
  std::string paper_grid;   // "no_subgroup" | "with_subgroup"
  bool desk_scale = false;
  std::string out_dir;
  int workers = 0;
};

struct AnalyzeArgs {
  std::string cohort_path;
  std::string schema_path;
  std::optional<int> sensitivity_cap;
  std::string out_dir;
};

struct KmArgs {
  std::string cohort_path;
  std::string schema_path;
  double bin_width = 30.0;
  std::string time_zero = "landmark";  // or "vaccination"
  std::string out_dir;
};

int cmd_simulate(const SimulateArgs& args);
int cmd_experiment(const ExperimentArgs& args);
int cmd_analyze(const AnalyzeArgs& args);
int cmd_km(const KmArgs& args);

}  // namespace vaxwane::cli
