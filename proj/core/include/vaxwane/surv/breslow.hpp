#pragma once

#include "vaxwane/surv/types.hpp"

namespace vaxwane::surv {

/// Breslow estimate of the cumulative baseline hazard at the fitted
/// coefficients: steps of d_j / sum_{k in R_j} exp(x_k' beta) at each event
/// time. Nondecreasing, 0 before the first event. Requires a converged fit.
StepFunction breslow_baseline(const CoxFit& fit, const SurvivalDataset& data);

}  // namespace vaxwane::surv
