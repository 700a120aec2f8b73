#pragma once

#include <Eigen/Dense>
#include <span>

#include "vaxwane/surv/types.hpp"

namespace vaxwane::surv {

/// Log partial likelihood at beta. The risk set at an event time t is
/// {k : entry_k < t <= time_k}; tied event times use the requested method.
/// Throws DataError("no events") when the data has no events and on a
/// beta/covariate dimension mismatch.
double log_partial_likelihood(const SurvivalDataset& data, std::span<const double> beta,
                              TiesMethod ties = TiesMethod::Efron);

struct ScoreInfo {
  Eigen::VectorXd score;        // gradient of the log partial likelihood
  Eigen::MatrixXd information;  // negative Hessian, symmetric PSD
};

/// Analytic first and second derivatives of log_partial_likelihood.
ScoreInfo score_and_information(const SurvivalDataset& data, std::span<const double> beta,
                                TiesMethod ties = TiesMethod::Efron);

}  // namespace vaxwane::surv
