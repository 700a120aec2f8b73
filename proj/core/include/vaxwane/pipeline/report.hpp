#pragma once

#include <iosfwd>
#include <nlohmann/json_fwd.hpp>
#include <span>
#include <string>
#include <vector>

#include "vaxwane/pipeline/analysis.hpp"

namespace vaxwane::pipeline {

/// "1.003 (1.000, 1.005)" --- hazard ratio and CI to three decimals.
std::string fmt_hr_ci(const surv::TestResult& r);

/// Three-decimal p-value; values below 0.001 render as "<0.001".
std::string fmt_p(double p);

/// Human-readable mechanism report in the layout of a driving-mechanism
/// results table: population, events/patients, HR per day (CI), p-value.
std::string mechanism_report_text(const MechanismReport& report);

nlohmann::json mechanism_report_json(const MechanismReport& report);

/// Side-by-side table of the offset model and the standard Cox model:
/// "term | HR (CI) | p | HR (CI) | p".
std::string dual_model_text(std::span<const DualModelRow> rows);

/// Full-precision CSV of the same comparison.
void write_dual_model_csv(std::span<const DualModelRow> rows, std::ostream& out);

/// Plot-ready KM export: stratum,time,survival,ci_lower,ci_upper,at_risk.
void write_km_curves_csv(std::span<const surv::KMCurve> curves, std::ostream& out);

}  // namespace vaxwane::pipeline
