#pragma once

namespace vaxwane::stats {

/// Standard normal CDF, computed through the complementary error function.
/// Absolute error below 1e-12 over the full real line.
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal quantile. Rational initial approximation (Acklam) refined
/// by one Newton step on the CDF; relative error below 1e-9.
/// Throws vaxwane::Error unless 0 < p < 1.
double normal_quantile(double p);

/// Two-sided p-value for a standard-normal statistic.
double two_sided_p(double z);

}  // namespace vaxwane::stats
