#include "vaxwane/pipeline/report.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "vaxwane/io/csv.hpp"

namespace vaxwane::pipeline {

namespace {

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

nlohmann::json test_result_json(const surv::TestResult& r) {
  return {{"term", r.term},
          {"estimate", r.estimate},
          {"std_error", r.std_error},
          {"z_value", r.z_value},
          {"p_value", r.p_value},
          {"hazard_ratio", r.hazard_ratio},
          {"ci_lower", r.ci_lower},
          {"ci_upper", r.ci_upper},
          {"confidence_level", r.confidence_level}};
}

nlohmann::json population_json(const PopulationTest& p) {
  nlohmann::json j{{"label", p.label},
                   {"n_patients", p.n_patients},
                   {"n_events", p.n_events},
                   {"ok", p.ok}};
  if (p.ok) {
    j["offset"] = test_result_json(p.offset);
    nlohmann::json covs = nlohmann::json::array();
    for (const auto& c : p.covariates) covs.push_back(test_result_json(c));
    j["covariates"] = covs;
  } else {
    j["error"] = p.error;
  }
  return j;
}

void population_text(std::ostringstream& out, const PopulationTest& p) {
  out << p.label << " | " << p.n_events << " / " << p.n_patients << " | ";
  if (p.ok) {
    out << fmt_hr_ci(p.offset) << " | " << fmt_p(p.offset.p_value) << '\n';
  } else {
    out << "fit failed: " << p.error << '\n';
  }
}

}  // namespace

std::string fmt_hr_ci(const surv::TestResult& r) {
  return fixed3(r.hazard_ratio) + " (" + fixed3(r.ci_lower) + ", " + fixed3(r.ci_upper) + ")";
}

std::string fmt_p(double p) {
  if (p < 0.001) return "<0.001";
  return fixed3(p);
}

std::string mechanism_report_text(const MechanismReport& report) {
  std::ostringstream out;
  out << "Test for driving mechanism\n";
  out << "Population | # events / # patients | HR per day (95% CI) | p-value\n";
  population_text(out, report.full);
  if (report.sensitivity) population_text(out, *report.sensitivity);
  out << '\n' << report.interpretation << '\n';

  if (report.full.ok && !report.full.covariates.empty()) {
    out << "\nAdjusted covariates\n";
    out << "Term | HR (95% CI) | p-value\n";
    for (const auto& c : report.full.covariates) {
      out << c.term << " | " << fmt_hr_ci(c) << " | " << fmt_p(c.p_value) << '\n';
    }
  }
  return out.str();
}

nlohmann::json mechanism_report_json(const MechanismReport& report) {
  nlohmann::json j{{"full", population_json(report.full)},
                   {"alpha", report.alpha},
                   {"interpretation", report.interpretation}};
  if (report.sensitivity) {
    j["sensitivity"] = population_json(*report.sensitivity);
    j["sensitivity_cap_days"] = report.sensitivity_cap_days;
  }
  return j;
}

std::string dual_model_text(std::span<const DualModelRow> rows) {
  std::ostringstream out;
  out << "Term | Offset model HR (95% CI) | p | Cox PH HR (95% CI) | p\n";
  for (const auto& row : rows) {
    out << row.term << " | ";
    if (row.proposed) {
      out << fmt_hr_ci(*row.proposed) << " | " << fmt_p(row.proposed->p_value);
    } else {
      out << " | ";
    }
    out << " | ";
    if (row.naive) {
      out << fmt_hr_ci(*row.naive) << " | " << fmt_p(row.naive->p_value);
    } else {
      out << " | ";
    }
    out << '\n';
  }
  return out.str();
}

void write_dual_model_csv(std::span<const DualModelRow> rows, std::ostream& out) {
  out << "term,proposed_hr,proposed_ci_lower,proposed_ci_upper,proposed_p,"
         "naive_hr,naive_ci_lower,naive_ci_upper,naive_p\n";
  auto cell = [&](const std::optional<surv::TestResult>& r, auto pick) {
    return r ? io::fmt_g(pick(*r), 12) : std::string();
  };
  for (const auto& row : rows) {
    out << io::csv_escape(row.term) << ','
        << cell(row.proposed, [](const auto& r) { return r.hazard_ratio; }) << ','
        << cell(row.proposed, [](const auto& r) { return r.ci_lower; }) << ','
        << cell(row.proposed, [](const auto& r) { return r.ci_upper; }) << ','
        << cell(row.proposed, [](const auto& r) { return r.p_value; }) << ','
        << cell(row.naive, [](const auto& r) { return r.hazard_ratio; }) << ','
        << cell(row.naive, [](const auto& r) { return r.ci_lower; }) << ','
        << cell(row.naive, [](const auto& r) { return r.ci_upper; }) << ','
        << cell(row.naive, [](const auto& r) { return r.p_value; }) << '\n';
  }
}

void write_km_curves_csv(std::span<const surv::KMCurve> curves, std::ostream& out) {
  out << "stratum,time,survival,ci_lower,ci_upper,at_risk\n";
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.times.size(); ++i) {
      out << io::csv_escape(c.stratum_label) << ',' << io::fmt_g(c.times[i], 12) << ','
          << io::fmt_g(c.survival[i], 12) << ',' << io::fmt_g(c.ci_lower[i], 12) << ','
          << io::fmt_g(c.ci_upper[i], 12) << ',' << c.at_risk[i] << '\n';
    }
  }
}

}  // namespace vaxwane::pipeline
