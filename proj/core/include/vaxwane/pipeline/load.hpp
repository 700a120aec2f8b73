#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vaxwane/io/dates.hpp"
#include "vaxwane/pipeline/schema.hpp"

namespace vaxwane::pipeline {

/// Parsed cohort with categorical columns already expanded to indicator
/// covariates against their declared reference level. Rows that failed to
/// parse are skipped and described in row_errors.
struct RawCohort {
  std::vector<std::string> ids;
  std::vector<io::Date> vaccination_dates;
  std::vector<std::optional<io::Date>> event_dates;
  std::vector<std::vector<double>> covariate_rows;
  std::vector<std::string> covariate_names;  // expanded, e.g. "race=NH Black"
  long input_rows = 0;                       // data rows in the file
  std::vector<std::string> row_errors;

  std::size_t n_rows() const { return ids.size(); }
};

/// Loads and validates a cohort CSV against the schema. Missing declared
/// columns are a hard ConfigError; malformed rows (bad dates, unknown
/// category levels, non-numeric values) are skipped and reported.
RawCohort load_cohort(const std::string& csv_path, const CohortSchema& schema);

}  // namespace vaxwane::pipeline
