#include "vaxwane/mc/estimators.hpp"

#include "vaxwane/error.hpp"

namespace vaxwane::mc {

std::string_view estimator_name(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::ProposedOffset: return "proposed_offset";
    case EstimatorKind::NaiveCalendar: return "naive_calendar";
    case EstimatorKind::VaccinationTime: return "vaccination_time";
    case EstimatorKind::VaccinationTimeDelayedEntry: return "vaccination_time_delayed_entry";
  }
  return "unknown";
}

std::optional<EstimatorKind> estimator_from_name(std::string_view name) {
  for (int i = 0; i < kEstimatorCount; ++i) {
    const auto kind = static_cast<EstimatorKind>(i);
    if (estimator_name(kind) == name) return kind;
  }
  return std::nullopt;
}

bool estimator_requires_subgroup(EstimatorKind kind) {
  return kind != EstimatorKind::ProposedOffset;
}

surv::SurvivalDataset build_estimator_dataset(const sim::AnalyticCohort& cohort,
                                              EstimatorKind kind) {
  if (estimator_requires_subgroup(kind) && !cohort.has_subgroup) {
    throw ConfigError(std::string(estimator_name(kind)) +
                      " requires a cohort with a subgroup indicator");
  }

  std::vector<surv::SurvivalRow> rows;
  rows.reserve(cohort.rows.size());
  std::vector<std::string> names;

  switch (kind) {
    case EstimatorKind::ProposedOffset: {
      names.push_back("z_delta");
      if (cohort.has_subgroup) names.push_back("x1");
      for (const auto& r : cohort.rows) {
        surv::SurvivalRow row;
        row.time = r.time;
        row.event = r.event;
        row.covariates.push_back(r.z_delta);
        if (cohort.has_subgroup) row.covariates.push_back(static_cast<double>(r.x1));
        rows.push_back(std::move(row));
      }
      break;
    }
    case EstimatorKind::NaiveCalendar: {
      names.push_back("x1");
      for (const auto& r : cohort.rows) {
        rows.push_back({0.0, r.time, r.event, {static_cast<double>(r.x1)}});
      }
      break;
    }
    case EstimatorKind::VaccinationTime: {
      names.push_back("x1");
      for (const auto& r : cohort.rows) {
        rows.push_back({0.0, r.z_delta + r.time, r.event, {static_cast<double>(r.x1)}});
      }
      break;
    }
    case EstimatorKind::VaccinationTimeDelayedEntry: {
      names.push_back("x1");
      for (const auto& r : cohort.rows) {
        rows.push_back({r.z_delta, r.z_delta + r.time, r.event, {static_cast<double>(r.x1)}});
      }
      break;
    }
  }
  return surv::SurvivalDataset(std::move(rows), std::move(names));
}

}  // namespace vaxwane::mc
