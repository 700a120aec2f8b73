#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "vaxwane/sim/hazard.hpp"

namespace vaxwane::sim {

struct SubgroupConfig {
  bool enabled = false;
  double beta1 = 0.15;     // log hazard ratio of the subgroup
  double fraction = 0.5;   // membership probability
};

/// Configuration of one simulated analytic cohort. Calendar day 0 is the
/// start of the vaccination window; the landmark L is its end; follow-up is
/// administratively censored at L + followup_days. Subjects are at risk from
/// their vaccination day, and anyone whose event falls on or before L is
/// discarded (left truncation) before sampling down to n_subjects.
struct CohortConfig {
  long n_subjects = 0;
  double vaccination_window_days = 365.0;
  double followup_days = 365.0;
  SubgroupConfig subgroup;
  HazardSpec hazard;
  std::uint64_t seed = 0;
  int pool_chunk_factor = 2;

  double landmark_day() const { return vaccination_window_days; }
  double censor_day() const { return vaccination_window_days + followup_days; }

  void validate() const;
};

struct CohortRow {
  double z_delta = 0.0;  // days from vaccination to the landmark, in (0, window]
  double time = 0.0;     // follow-up from the landmark, in (0, followup]
  int event = 0;
  int x1 = 0;  // subgroup indicator; meaningful only when subgroups are enabled
};

struct AnalyticCohort {
  std::vector<CohortRow> rows;
  bool has_subgroup = false;
  double landmark_day = 0.0;
  double followup_days = 0.0;
  long truncated_count = 0;  // candidates discarded for a pre-landmark event
};

/// Deterministic generation: candidate i draws from the substream keyed by
/// (config.seed, i), so the output is a pure function of the config and is
/// independent of any internal batching.
AnalyticCohort generate_cohort(const CohortConfig& config);

/// CSV export with header `z_delta,T,C` plus `x1` when subgroups are enabled;
/// times carry 12 significant digits.
void write_cohort_csv(const AnalyticCohort& cohort, std::ostream& out);

}  // namespace vaxwane::sim
