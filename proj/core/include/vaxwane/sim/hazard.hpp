#pragma once

#include "vaxwane/rng.hpp"

namespace vaxwane::sim {

enum class Mechanism { Waning, NewStrain };

/// Daily infection hazard for one subject, anchored to calendar time.
///
/// Waning: the rate sits at lowest_rate for flat_days after vaccination, then
/// rises linearly by rise_per_day until it reaches highest_rate, where it
/// stays. NewStrain: the rate is pre_strain_rate before strain_day and
/// post_strain_rate from strain_day on, independent of the vaccination date.
struct HazardSpec {
  Mechanism mechanism = Mechanism::Waning;

  // Waning parameters
  double lowest_rate = 0.0;   // a, per day
  double highest_rate = 0.0;  // b, per day
  double flat_days = 0.0;     // d
  double rise_per_day = 0.0;  // r

  // NewStrain parameters
  double pre_strain_rate = 0.0;   // k, per day
  double post_strain_rate = 0.0;  // c, per day
  double strain_day = 0.0;        // calendar day the new strain emerges

  static HazardSpec waning(double lowest, double highest, double flat, double rise);
  static HazardSpec new_strain(double pre, double post, double strain_day);

  /// Throws ConfigError when rates or shape parameters are out of range.
  void validate() const;
};

/// Hazard at calendar day t for a subject vaccinated on day `vaccination_day`
/// with proportional multiplier m. Requires t >= vaccination_day.
double hazard_at(const HazardSpec& spec, double vaccination_day, double m, double t);

/// Exact piecewise integral of hazard_at from vaccination_day to t.
double cumulative_hazard(const HazardSpec& spec, double vaccination_day, double m, double t);

/// Smallest calendar day t with cumulative_hazard(t) = target. Requires
/// target >= 0.
double invert_cumulative_hazard(const HazardSpec& spec, double vaccination_day, double m,
                                double target);

/// Inverse-transform sample of the event day: t = Lambda^{-1}(-log U) with
/// U drawn uniformly on (0,1) from the given stream.
double draw_event_time(const HazardSpec& spec, double vaccination_day, double m,
                       SplitMix64& rng);

}  // namespace vaxwane::sim
