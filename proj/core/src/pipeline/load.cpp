#include "vaxwane/pipeline/load.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include "vaxwane/error.hpp"
#include "vaxwane/io/csv.hpp"

namespace vaxwane::pipeline {

namespace {

std::optional<double> parse_double(const std::string& text) {
  if (text.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

RawCohort load_cohort(const std::string& csv_path, const CohortSchema& schema) {
  const io::CsvTable table = io::read_csv_file(csv_path);

  std::map<std::string, int> col_index;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    col_index[table.header[i]] = static_cast<int>(i);
  }
  auto require_column = [&](const std::string& name) {
    const auto it = col_index.find(name);
    if (it == col_index.end()) throw ConfigError("missing column: " + name);
    return it->second;
  };

  const int id_col = require_column(schema.id_column);
  const int vax_col = require_column(schema.vaccination_date_column);
  const int event_col = require_column(schema.event_date_column);
  std::vector<int> cov_cols;
  for (const auto& c : schema.covariates) cov_cols.push_back(require_column(c.name));

  // Resolve categorical level sets: declared levels when given, otherwise the
  // distinct observed values in order of appearance.
  std::vector<std::vector<std::string>> level_sets(schema.covariates.size());
  for (std::size_t ci = 0; ci < schema.covariates.size(); ++ci) {
    const auto& spec = schema.covariates[ci];
    if (spec.kind != CovariateKind::Categorical) continue;
    if (!spec.levels.empty()) {
      level_sets[ci] = spec.levels;
    } else {
      std::set<std::string> seen;
      for (const auto& row : table.rows) {
        if (static_cast<std::size_t>(cov_cols[ci]) < row.size()) {
          const auto& v = row[static_cast<std::size_t>(cov_cols[ci])];
          if (!v.empty() && seen.insert(v).second) level_sets[ci].push_back(v);
        }
      }
    }
    if (std::find(level_sets[ci].begin(), level_sets[ci].end(), spec.reference) ==
        level_sets[ci].end()) {
      throw ConfigError("reference level '" + spec.reference + "' of covariate '" + spec.name +
                        "' does not occur in the data or declared levels");
    }
  }

  RawCohort cohort;
  cohort.input_rows = static_cast<long>(table.rows.size());
  for (std::size_t ci = 0; ci < schema.covariates.size(); ++ci) {
    const auto& spec = schema.covariates[ci];
    if (spec.kind == CovariateKind::Categorical) {
      for (const auto& level : level_sets[ci]) {
        if (level != spec.reference) cohort.covariate_names.push_back(spec.name + "=" + level);
      }
    } else {
      cohort.covariate_names.push_back(spec.name);
    }
  }

  for (std::size_t ri = 0; ri < table.rows.size(); ++ri) {
    const auto& row = table.rows[ri];
    const long line = static_cast<long>(ri) + 2;  // header is line 1
    auto reject = [&](const std::string& why) {
      cohort.row_errors.push_back("line " + std::to_string(line) + ": " + why);
    };
    if (row.size() != table.header.size()) {
      reject("expected " + std::to_string(table.header.size()) + " fields, got " +
             std::to_string(row.size()));
      continue;
    }

    const auto vax = io::parse_iso_date(row[static_cast<std::size_t>(vax_col)]);
    if (!vax) {
      reject("invalid vaccination date '" + row[static_cast<std::size_t>(vax_col)] + "'");
      continue;
    }
    std::optional<io::Date> event;
    const auto& event_text = row[static_cast<std::size_t>(event_col)];
    if (!event_text.empty()) {
      event = io::parse_iso_date(event_text);
      if (!event) {
        reject("invalid event date '" + event_text + "'");
        continue;
      }
    }

    std::vector<double> covs;
    covs.reserve(cohort.covariate_names.size());
    bool bad = false;
    for (std::size_t ci = 0; ci < schema.covariates.size() && !bad; ++ci) {
      const auto& spec = schema.covariates[ci];
      const auto& value = row[static_cast<std::size_t>(cov_cols[ci])];
      switch (spec.kind) {
        case CovariateKind::Binary: {
          if (value == "0" || value == "1") {
            covs.push_back(value == "1" ? 1.0 : 0.0);
          } else {
            reject("covariate '" + spec.name + "' must be 0 or 1, got '" + value + "'");
            bad = true;
          }
          break;
        }
        case CovariateKind::Continuous: {
          const auto v = parse_double(value);
          if (v) {
            covs.push_back(*v);
          } else {
            reject("covariate '" + spec.name + "' is not a number: '" + value + "'");
            bad = true;
          }
          break;
        }
        case CovariateKind::Categorical: {
          const auto& levels = level_sets[ci];
          if (std::find(levels.begin(), levels.end(), value) == levels.end()) {
            reject("unknown level '" + value + "' for covariate '" + spec.name + "'");
            bad = true;
            break;
          }
          for (const auto& level : levels) {
            if (level != spec.reference) covs.push_back(value == level ? 1.0 : 0.0);
          }
          break;
        }
      }
    }
    if (bad) continue;

    cohort.ids.push_back(row[static_cast<std::size_t>(id_col)]);
    cohort.vaccination_dates.push_back(*vax);
    cohort.event_dates.push_back(event);
    cohort.covariate_rows.push_back(std::move(covs));
  }
  return cohort;
}

}  // namespace vaxwane::pipeline
