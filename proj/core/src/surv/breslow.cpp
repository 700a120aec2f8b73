#include "vaxwane/surv/breslow.hpp"

#include <cmath>

#include "vaxwane/error.hpp"
#include "risk_sweep.hpp"

namespace vaxwane::surv {

StepFunction breslow_baseline(const CoxFit& fit, const SurvivalDataset& data) {
  if (!fit.converged) throw DataError("breslow_baseline requires a converged fit");
  if (fit.beta.size() != data.n_covariates()) {
    throw DataError("fit/covariate dimension mismatch");
  }

  const std::size_t n = data.n_rows();
  const std::size_t p = data.n_covariates();
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    double eta = 0.0;
    for (std::size_t j = 0; j < p; ++j) eta += data.rows()[i].covariates[j] * fit.beta[j];
    weights[i] = std::exp(eta);
  }

  const detail::RiskSweep sweep(data);
  const auto jumps = sweep.breslow_jumps(weights);

  StepFunction fn;
  fn.times.reserve(jumps.size());
  fn.values.reserve(jumps.size());
  double running = 0.0;
  for (const auto& j : jumps) {
    running += j.increment;
    fn.times.push_back(j.time);
    fn.values.push_back(running);
  }
  return fn;
}

}  // namespace vaxwane::surv
