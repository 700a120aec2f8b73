#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "vaxwane/io/dates.hpp"

namespace vaxwane::pipeline {

enum class CovariateKind { Binary, Categorical, Continuous };

struct CovariateSpec {
  std::string name;
  CovariateKind kind = CovariateKind::Binary;
  std::string reference;            // categorical only
  std::vector<std::string> levels;  // optional closed level set (categorical)
};

/// Calendar window of the landmark analysis:
/// vaccination_start <= vaccination_date < landmark, follow-up in
/// (landmark, censor].
struct AnalysisWindow {
  io::Date vaccination_start{};
  io::Date landmark{};
  io::Date censor{};

  void validate() const;  // throws ConfigError unless start < landmark < censor
};

/// Declares the column roles of a raw cohort CSV plus the analysis window.
struct CohortSchema {
  std::string id_column = "id";
  std::string vaccination_date_column = "vaccination_date";
  std::string event_date_column = "event_date";
  std::vector<CovariateSpec> covariates;
  AnalysisWindow window;
  std::optional<int> sensitivity_cap_days;

  static CohortSchema from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

CohortSchema load_schema_file(const std::string& path);

}  // namespace vaxwane::pipeline
