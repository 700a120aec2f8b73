#pragma once

#include <iosfwd>

#include "vaxwane/pipeline/schema.hpp"
#include "vaxwane/sim/cohort.hpp"

namespace vaxwane::pipeline {

/// Bridges the simulation arm into the raw-cohort format: anchors the cohort
/// to calendar dates and rounds times up to whole days, producing a CSV with
/// columns id,vaccination_date,event_date[,x1]. vaccination_date is
/// landmark - ceil(z_delta); an event becomes landmark + ceil(T). Loading the
/// result through the cohort pipeline reproduces the rounded (z, T, C, x1)
/// exactly.
void write_dated_cohort_csv(const sim::AnalyticCohort& cohort, io::Date vaccination_start,
                            std::ostream& out);

/// Matching schema (column roles, window, default 90-day sensitivity cap).
CohortSchema dated_cohort_schema(const sim::AnalyticCohort& cohort, io::Date vaccination_start);

}  // namespace vaxwane::pipeline
