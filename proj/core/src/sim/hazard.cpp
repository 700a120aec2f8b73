#include "vaxwane/sim/hazard.hpp"

#include <cmath>

#include "vaxwane/error.hpp"

namespace vaxwane::sim {

HazardSpec HazardSpec::waning(double lowest, double highest, double flat, double rise) {
  HazardSpec s;
  s.mechanism = Mechanism::Waning;
  s.lowest_rate = lowest;
  s.highest_rate = highest;
  s.flat_days = flat;
  s.rise_per_day = rise;
  s.validate();
  return s;
}

HazardSpec HazardSpec::new_strain(double pre, double post, double strain_day) {
  HazardSpec s;
  s.mechanism = Mechanism::NewStrain;
  s.pre_strain_rate = pre;
  s.post_strain_rate = post;
  s.strain_day = strain_day;
  s.validate();
  return s;
}

void HazardSpec::validate() const {
  if (mechanism == Mechanism::Waning) {
    if (!(lowest_rate > 0.0)) throw ConfigError("waning: lowest rate must be > 0");
    if (!(highest_rate >= lowest_rate)) {
      throw ConfigError("waning: highest rate must be >= lowest rate");
    }
    if (!(flat_days >= 0.0)) throw ConfigError("waning: flat duration must be >= 0");
    if (!(rise_per_day > 0.0)) throw ConfigError("waning: rise per day must be > 0");
  } else {
    if (!(pre_strain_rate > 0.0)) throw ConfigError("new_strain: pre-strain rate must be > 0");
    if (!(post_strain_rate > 0.0)) throw ConfigError("new_strain: post-strain rate must be > 0");
    if (!(strain_day >= 0.0)) throw ConfigError("new_strain: strain day must be >= 0");
  }
}

namespace {

void check_args(double vaccination_day, double m, double t) {
  if (t < vaccination_day) throw Error("time precedes vaccination day");
  if (!(m > 0.0)) throw Error("hazard multiplier must be > 0");
}

/// Days from the start of the ramp to its ceiling.
double ramp_span(const HazardSpec& s) { return (s.highest_rate - s.lowest_rate) / s.rise_per_day; }

}  // namespace

double hazard_at(const HazardSpec& spec, double vaccination_day, double m, double t) {
  check_args(vaccination_day, m, t);
  if (spec.mechanism == Mechanism::Waning) {
    const double u = t - vaccination_day;
    if (u <= spec.flat_days) return m * spec.lowest_rate;
    const double ramp_end = spec.flat_days + ramp_span(spec);
    if (u <= ramp_end) return m * (spec.lowest_rate + spec.rise_per_day * (u - spec.flat_days));
    return m * spec.highest_rate;
  }
  return m * (t < spec.strain_day ? spec.pre_strain_rate : spec.post_strain_rate);
}

double cumulative_hazard(const HazardSpec& spec, double vaccination_day, double m, double t) {
  check_args(vaccination_day, m, t);
  if (spec.mechanism == Mechanism::Waning) {
    const double u = t - vaccination_day;
    const double a = spec.lowest_rate;
    const double r = spec.rise_per_day;
    const double d = spec.flat_days;
    if (u <= d) return m * a * u;
    const double span = ramp_span(spec);
    if (u <= d + span) {
      const double s = u - d;
      return m * (a * d + a * s + 0.5 * r * s * s);
    }
    const double ramp_area = span * 0.5 * (spec.lowest_rate + spec.highest_rate);
    return m * (a * d + ramp_area + spec.highest_rate * (u - d - span));
  }
  const double sday = spec.strain_day;
  if (sday <= vaccination_day) return m * spec.post_strain_rate * (t - vaccination_day);
  if (t < sday) return m * spec.pre_strain_rate * (t - vaccination_day);
  return m * (spec.pre_strain_rate * (sday - vaccination_day) +
              spec.post_strain_rate * (t - sday));
}

double invert_cumulative_hazard(const HazardSpec& spec, double vaccination_day, double m,
                                double target) {
  if (!(m > 0.0)) throw Error("hazard multiplier must be > 0");
  if (target < 0.0) throw Error("cumulative-hazard target must be >= 0");
  const double e = target / m;

  if (spec.mechanism == Mechanism::Waning) {
    const double a = spec.lowest_rate;
    const double r = spec.rise_per_day;
    const double d = spec.flat_days;
    const double flat_area = a * d;
    if (e <= flat_area) return vaccination_day + e / a;
    const double span = ramp_span(spec);
    const double ramp_area = span * 0.5 * (spec.lowest_rate + spec.highest_rate);
    if (e <= flat_area + ramp_area) {
      // a*s + r*s^2/2 = e - flat_area; stable quadratic root for small r.
      const double rhs = e - flat_area;
      const double s = 2.0 * rhs / (a + std::sqrt(a * a + 2.0 * r * rhs));
      return vaccination_day + d + s;
    }
    return vaccination_day + d + span + (e - flat_area - ramp_area) / spec.highest_rate;
  }

  const double sday = spec.strain_day;
  if (sday <= vaccination_day) return vaccination_day + e / spec.post_strain_rate;
  const double pre_area = spec.pre_strain_rate * (sday - vaccination_day);
  if (e <= pre_area) return vaccination_day + e / spec.pre_strain_rate;
  return sday + (e - pre_area) / spec.post_strain_rate;
}

double draw_event_time(const HazardSpec& spec, double vaccination_day, double m,
                       SplitMix64& rng) {
  const double u = rng.next_unit_open();
  return invert_cumulative_hazard(spec, vaccination_day, m, -std::log(u));
}

}  // namespace vaxwane::sim
