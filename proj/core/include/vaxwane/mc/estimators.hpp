#pragma once

#include <optional>
#include <string_view>

#include "vaxwane/sim/cohort.hpp"
#include "vaxwane/surv/types.hpp"

namespace vaxwane::mc {

/// The competing analysis strategies applied to each simulated cohort.
///
/// ProposedOffset      : time zero at the landmark, covariates z_delta [+ x1].
/// NaiveCalendar       : time zero at the landmark, covariate x1 only.
/// VaccinationTime     : time zero at vaccination (time = z_delta + T) but no
///                       delayed entry, covariate x1 only; reproduces the
///                       misspecified comparator.
/// VaccinationTimeDelayedEntry : as VaccinationTime with entry = z_delta, the
///                       correctly left-truncated variant.
enum class EstimatorKind {
  ProposedOffset,
  NaiveCalendar,
  VaccinationTime,
  VaccinationTimeDelayedEntry,
};

inline constexpr int kEstimatorCount = 4;

std::string_view estimator_name(EstimatorKind kind);
std::optional<EstimatorKind> estimator_from_name(std::string_view name);

/// Every estimator except ProposedOffset models only the subgroup indicator
/// and is undefined on cohorts without one.
bool estimator_requires_subgroup(EstimatorKind kind);

/// Builds the estimator's analysis dataset from a simulated cohort.
surv::SurvivalDataset build_estimator_dataset(const sim::AnalyticCohort& cohort,
                                              EstimatorKind kind);

}  // namespace vaxwane::mc
