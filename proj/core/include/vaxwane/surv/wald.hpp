#pragma once

#include <cstddef>

#include "vaxwane/surv/types.hpp"

namespace vaxwane::surv {

/// Wald test for one coefficient: z = beta/se, two-sided normal p-value,
/// hazard ratio exp(beta) with CI exp(beta +/- q * se).
/// Requires a converged fit and a positive variance for the coefficient.
TestResult wald_test(const CoxFit& fit, std::size_t index, double confidence_level = 0.95);

}  // namespace vaxwane::surv
