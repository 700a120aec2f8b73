#pragma once

#include <string>

#include "vaxwane/surv/types.hpp"

namespace vaxwane::surv {

/// Product-limit survival estimate with Greenwood standard errors and a
/// log-transformed confidence band clamped to [0, 1].
/// Requires entry_time = 0 for every row (delayed-entry KM is not supported).
KMCurve km_estimate(const SurvivalDataset& data, std::string stratum_label,
                    double confidence_level = 0.95);

}  // namespace vaxwane::surv
