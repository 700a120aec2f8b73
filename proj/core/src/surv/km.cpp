#include "vaxwane/surv/km.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vaxwane/error.hpp"
#include "vaxwane/stats/normal.hpp"

namespace vaxwane::surv {

KMCurve km_estimate(const SurvivalDataset& data, std::string stratum_label,
                    double confidence_level) {
  if (data.has_delayed_entry()) {
    throw DataError("km_estimate does not support delayed entry");
  }
  if (!(confidence_level > 0.0 && confidence_level < 1.0)) {
    throw ConfigError("confidence_level must be in (0, 1)");
  }

  struct Obs {
    double time;
    int event;
  };
  std::vector<Obs> obs;
  obs.reserve(data.n_rows());
  for (const auto& r : data.rows()) obs.push_back({r.time, r.event});
  std::sort(obs.begin(), obs.end(), [](const Obs& a, const Obs& b) { return a.time < b.time; });

  KMCurve curve;
  curve.stratum_label = std::move(stratum_label);
  curve.n_rows = obs.size();
  const double q = stats::normal_quantile(0.5 * (1.0 + confidence_level));

  double survival = 1.0;
  double greenwood_sum = 0.0;  // variance of log S
  std::size_t i = 0;
  const std::size_t n = obs.size();
  while (i < n) {
    const double t = obs[i].time;
    long d = 0, removed = 0;
    while (i < n && obs[i].time == t) {
      d += obs[i].event;
      ++removed;
      ++i;
    }
    const long at_risk = static_cast<long>(n - (i - static_cast<std::size_t>(removed)));
    if (d == 0) continue;  // censoring-only time, no survival step

    survival *= 1.0 - static_cast<double>(d) / static_cast<double>(at_risk);
    double se, lo, hi;
    if (at_risk > d) {
      greenwood_sum += static_cast<double>(d) /
                       (static_cast<double>(at_risk) * static_cast<double>(at_risk - d));
      const double se_log = std::sqrt(greenwood_sum);
      se = survival * se_log;
      lo = std::clamp(survival * std::exp(-q * se_log), 0.0, 1.0);
      hi = std::clamp(survival * std::exp(q * se_log), 0.0, 1.0);
    } else {
      // Everyone at risk failed: S hits 0 and the log-scale band collapses.
      survival = 0.0;
      se = 0.0;
      lo = 0.0;
      hi = 0.0;
    }
    curve.times.push_back(t);
    curve.survival.push_back(survival);
    curve.greenwood_se.push_back(se);
    curve.ci_lower.push_back(lo);
    curve.ci_upper.push_back(hi);
    curve.at_risk.push_back(at_risk);
    curve.n_events.push_back(d);
  }
  return curve;
}

}  // namespace vaxwane::surv
