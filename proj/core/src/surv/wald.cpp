#include "vaxwane/surv/wald.hpp"

#include <cmath>

#include "vaxwane/error.hpp"
#include "vaxwane/stats/normal.hpp"

namespace vaxwane::surv {

TestResult wald_test(const CoxFit& fit, std::size_t index, double confidence_level) {
  if (!fit.converged) throw DataError("wald_test requires a converged fit");
  if (index >= fit.beta.size()) throw DataError("coefficient index out of range");
  if (!(confidence_level > 0.0 && confidence_level < 1.0)) {
    throw ConfigError("confidence_level must be in (0, 1)");
  }
  const double variance = fit.covariance(static_cast<Eigen::Index>(index),
                                         static_cast<Eigen::Index>(index));
  if (!(variance > 0.0)) throw DataError("zero variance for coefficient");

  TestResult r;
  r.term = fit.covariate_names[index];
  r.confidence_level = confidence_level;
  r.estimate = fit.beta[index];
  r.std_error = std::sqrt(variance);
  r.z_value = r.estimate / r.std_error;
  r.p_value = stats::two_sided_p(r.z_value);
  r.hazard_ratio = std::exp(r.estimate);
  const double q = stats::normal_quantile(0.5 * (1.0 + confidence_level));
  r.ci_lower = std::exp(r.estimate - q * r.std_error);
  r.ci_upper = std::exp(r.estimate + q * r.std_error);
  return r;
}

}  // namespace vaxwane::surv
