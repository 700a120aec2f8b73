#pragma once

#include "vaxwane/surv/types.hpp"

namespace vaxwane::surv {

/// Maximum partial-likelihood fit by Newton-Raphson with step-halving.
///
/// Covariates are centered and scaled to unit standard deviation internally
/// for conditioning; coefficients and the covariance are mapped back to the
/// original scale on output. Iteration starts at beta = 0 and a step is
/// halved (up to 10 times) whenever it fails to increase the likelihood.
/// The fit is declared converged when the relative likelihood change drops
/// below options.tolerance and the internal-scale score is below 1e-5 in the
/// max norm.
///
/// Throws DataError:
///  - "no events"                        when the data has no events;
///  - "non-identifiable"                 for constant columns or a singular
///                                       information matrix;
///  - "monotone likelihood / separation" when a coefficient escapes beyond
///                                       +/-50 or the internal-scale standard
///                                       error explodes, the signature of a
///                                       likelihood without an interior
///                                       maximum.
CoxFit cox_fit(const SurvivalDataset& data, const FitOptions& options = {});

}  // namespace vaxwane::surv
