#include "vaxwane/sim/cohort.hpp"

#include <cmath>
#include <ostream>

#include "vaxwane/error.hpp"
#include "vaxwane/io/csv.hpp"

namespace vaxwane::sim {

void CohortConfig::validate() const {
  if (n_subjects <= 0) throw ConfigError("n_subjects must be positive");
  if (!(vaccination_window_days > 0.0)) throw ConfigError("vaccination window must be positive");
  if (!(followup_days > 0.0)) throw ConfigError("follow-up must be positive");
  if (subgroup.enabled && !(subgroup.fraction > 0.0 && subgroup.fraction < 1.0)) {
    throw ConfigError("subgroup fraction must be in (0, 1)");
  }
  if (pool_chunk_factor < 1) throw ConfigError("pool_chunk_factor must be >= 1");
  hazard.validate();
}

AnalyticCohort generate_cohort(const CohortConfig& config) {
  config.validate();

  const double landmark = config.landmark_day();
  const double censor = config.censor_day();
  const double window = config.vaccination_window_days;
  const double beta_mult = std::exp(config.subgroup.beta1);

  AnalyticCohort cohort;
  cohort.has_subgroup = config.subgroup.enabled;
  cohort.landmark_day = landmark;
  cohort.followup_days = config.followup_days;
  cohort.rows.reserve(static_cast<std::size_t>(config.n_subjects));

  // Candidates are scanned in index order and the first n_subjects survivors
  // are kept, so the result does not depend on batch sizes. The chunk factor
  // only sizes the reservation.
  const std::uint64_t stall_guard =
      1000000000ull + 1000ull * static_cast<std::uint64_t>(config.n_subjects);
  for (std::uint64_t index = 0;
       cohort.rows.size() < static_cast<std::size_t>(config.n_subjects); ++index) {
    if (index > stall_guard) {
      throw Error("cohort generation stalled: nearly every candidate has a pre-landmark event");
    }
    SplitMix64 rng(mix_seed(config.seed, index));
    const double vaccination_day = rng.next_unit_open() * window;
    int x1 = 0;
    double m = 1.0;
    if (config.subgroup.enabled) {
      x1 = rng.next_unit_open() < config.subgroup.fraction ? 1 : 0;
      m = x1 ? beta_mult : 1.0;
    }
    const double event_day = draw_event_time(config.hazard, vaccination_day, m, rng);
    if (event_day <= landmark) {
      ++cohort.truncated_count;
      continue;
    }
    CohortRow row;
    row.z_delta = landmark - vaccination_day;
    row.x1 = x1;
    if (event_day <= censor) {
      row.time = event_day - landmark;
      row.event = 1;
    } else {
      row.time = config.followup_days;
      row.event = 0;
    }
    cohort.rows.push_back(row);
  }
  return cohort;
}

void write_cohort_csv(const AnalyticCohort& cohort, std::ostream& out) {
  out << (cohort.has_subgroup ? "z_delta,T,C,x1\n" : "z_delta,T,C\n");
  for (const auto& r : cohort.rows) {
    out << io::fmt_g(r.z_delta, 12) << ',' << io::fmt_g(r.time, 12) << ',' << r.event;
    if (cohort.has_subgroup) out << ',' << r.x1;
    out << '\n';
  }
}

}  // namespace vaxwane::sim
