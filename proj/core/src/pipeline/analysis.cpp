#include "vaxwane/pipeline/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "vaxwane/error.hpp"
#include "vaxwane/io/csv.hpp"
#include "vaxwane/surv/cox.hpp"
#include "vaxwane/surv/km.hpp"
#include "vaxwane/surv/wald.hpp"

namespace vaxwane::pipeline {

AnalysisDataset build_analysis_dataset(const RawCohort& cohort, const AnalysisWindow& window) {
  window.validate();
  ExclusionReport report;
  report.input_rows = static_cast<long>(cohort.n_rows());

  std::vector<surv::SurvivalRow> rows;
  for (std::size_t i = 0; i < cohort.n_rows(); ++i) {
    const io::Date vax = cohort.vaccination_dates[i];
    const auto& event = cohort.event_dates[i];
    if (event && *event < vax) {
      ++report.rejected_invalid;
      report.messages.push_back("subject " + cohort.ids[i] + ": event precedes vaccination");
      continue;
    }
    if (vax < window.vaccination_start || !(vax < window.landmark)) {
      ++report.excluded_window;
      continue;
    }
    if (event && !(*event > window.landmark)) {
      ++report.excluded_pre_landmark_event;
      continue;
    }

    surv::SurvivalRow row;
    const long z = io::days_between(vax, window.landmark);
    if (event && *event <= window.censor) {
      row.time = static_cast<double>(io::days_between(window.landmark, *event));
      row.event = 1;
    } else {
      row.time = static_cast<double>(io::days_between(window.landmark, window.censor));
      row.event = 0;
    }
    row.covariates.push_back(static_cast<double>(z));
    row.covariates.insert(row.covariates.end(), cohort.covariate_rows[i].begin(),
                          cohort.covariate_rows[i].end());
    rows.push_back(std::move(row));
    ++report.included;
  }

  if (rows.empty()) throw DataError("no subjects remain after applying the analysis window");

  std::vector<std::string> names{"z_delta"};
  names.insert(names.end(), cohort.covariate_names.begin(), cohort.covariate_names.end());
  return AnalysisDataset{surv::SurvivalDataset(std::move(rows), std::move(names)),
                         std::move(report)};
}

namespace {

PopulationTest fit_population(const surv::SurvivalDataset& data, std::string label,
                              const surv::FitOptions& options) {
  PopulationTest out;
  out.label = std::move(label);
  out.n_patients = static_cast<long>(data.n_rows());
  out.n_events = static_cast<long>(data.n_events());
  try {
    const auto fit = surv::cox_fit(data, options);
    const int z_index = data.covariate_index("z_delta");
    out.offset = surv::wald_test(fit, static_cast<std::size_t>(z_index),
                                 options.confidence_level);
    for (std::size_t j = 0; j < data.n_covariates(); ++j) {
      if (static_cast<int>(j) == z_index) continue;
      out.covariates.push_back(surv::wald_test(fit, j, options.confidence_level));
    }
    out.ok = true;
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

surv::SurvivalDataset subset_by_offset(const surv::SurvivalDataset& data, double cap) {
  const int z_index = data.covariate_index("z_delta");
  std::vector<surv::SurvivalRow> rows;
  for (const auto& r : data.rows()) {
    if (r.covariates[static_cast<std::size_t>(z_index)] <= cap) rows.push_back(r);
  }
  if (rows.empty()) throw DataError("sensitivity subset is empty");
  return surv::SurvivalDataset(std::move(rows), data.covariate_names());
}

}  // namespace

MechanismReport mechanism_test(const surv::SurvivalDataset& dataset,
                               const surv::FitOptions& options, std::optional<int> cap_days) {
  if (dataset.covariate_index("z_delta") < 0) {
    throw ConfigError("mechanism_test requires a 'z_delta' covariate");
  }
  if (dataset.n_events() == 0) throw_no_events();

  MechanismReport report;
  report.alpha = 1.0 - options.confidence_level;
  report.full = fit_population(dataset, "All patients", options);
  if (!report.full.ok) throw DataError(report.full.error);

  if (cap_days) {
    report.sensitivity_cap_days = *cap_days;
    const std::string label =
        "Recently vaccinated (z_delta <= " + std::to_string(*cap_days) + ")";
    try {
      const auto subset = subset_by_offset(dataset, static_cast<double>(*cap_days));
      report.sensitivity = fit_population(subset, label, options);
    } catch (const Error& e) {
      PopulationTest failed;
      failed.label = label;
      failed.error = e.what();
      report.sensitivity = std::move(failed);
    }
  }

  if (report.full.offset.p_value < report.alpha) {
    report.interpretation =
        "The vaccination offset is informative (p < " + io::fmt_g(report.alpha, 3) +
        "): recency of vaccination is associated with the post-landmark hazard, consistent "
        "with waning immunity contributing to the observed infections.";
  } else {
    report.interpretation =
        "The vaccination offset is not informative at level " + io::fmt_g(report.alpha, 3) +
        ". This is consistent with a calendar-driven mechanism such as a new strain, but does "
        "not rule out waning immunity.";
  }
  return report;
}

std::vector<DualModelRow> dual_model_comparison(const surv::SurvivalDataset& dataset,
                                                const surv::FitOptions& options) {
  const int z_index = dataset.covariate_index("z_delta");
  if (z_index < 0) throw ConfigError("dual_model_comparison requires a 'z_delta' covariate");
  if (dataset.n_covariates() < 2) {
    throw ConfigError("dual_model_comparison needs at least one covariate besides z_delta");
  }

  // The naive model is the same data with the z_delta column removed.
  std::vector<surv::SurvivalRow> naive_rows;
  naive_rows.reserve(dataset.n_rows());
  for (const auto& r : dataset.rows()) {
    surv::SurvivalRow copy = r;
    copy.covariates.erase(copy.covariates.begin() + z_index);
    naive_rows.push_back(std::move(copy));
  }
  std::vector<std::string> naive_names = dataset.covariate_names();
  naive_names.erase(naive_names.begin() + z_index);
  const surv::SurvivalDataset naive_data(std::move(naive_rows), std::move(naive_names));

  const auto proposed_fit = surv::cox_fit(dataset, options);
  const auto naive_fit = surv::cox_fit(naive_data, options);

  std::vector<DualModelRow> rows;
  rows.push_back({"z_delta",
                  surv::wald_test(proposed_fit, static_cast<std::size_t>(z_index),
                                  options.confidence_level),
                  std::nullopt});
  for (std::size_t j = 0; j < naive_data.n_covariates(); ++j) {
    const auto& term = naive_data.covariate_names()[j];
    const int pj = dataset.covariate_index(term);
    rows.push_back({term,
                    surv::wald_test(proposed_fit, static_cast<std::size_t>(pj),
                                    options.confidence_level),
                    surv::wald_test(naive_fit, j, options.confidence_level)});
  }
  return rows;
}

std::vector<surv::KMCurve> km_by_offset_bins(const surv::SurvivalDataset& dataset,
                                             double bin_width, double confidence_level) {
  const int z_index = dataset.covariate_index("z_delta");
  if (z_index < 0) throw ConfigError("km_by_offset_bins requires a 'z_delta' covariate");
  if (!(bin_width > 0.0)) throw ConfigError("bin width must be positive");

  double max_z = 0.0;
  for (const auto& r : dataset.rows()) {
    max_z = std::max(max_z, r.covariates[static_cast<std::size_t>(z_index)]);
  }
  // Bins 1..n_closed are ((i-1)w, iw]; everything beyond falls in one open
  // stratum so the largest offsets are never split into a sliver.
  const long top_bin = static_cast<long>(std::ceil(max_z / bin_width));
  const long n_closed = std::max<long>(top_bin - 1, 1);

  auto bin_of = [&](double z) {
    const long b = static_cast<long>(std::ceil(z / bin_width));
    return std::min(std::max<long>(b, 1), n_closed + 1);
  };

  std::vector<std::vector<surv::SurvivalRow>> strata(static_cast<std::size_t>(n_closed) + 1);
  for (const auto& r : dataset.rows()) {
    const double z = r.covariates[static_cast<std::size_t>(z_index)];
    surv::SurvivalRow bare;
    bare.time = r.time;
    bare.event = r.event;
    strata[static_cast<std::size_t>(bin_of(z) - 1)].push_back(std::move(bare));
  }

  std::vector<surv::KMCurve> curves;
  for (std::size_t s = 0; s < strata.size(); ++s) {
    if (strata[s].empty()) continue;
    std::string label;
    const double lo = static_cast<double>(s) * bin_width;
    if (s + 1 < strata.size()) {
      label = "(" + io::fmt_g(lo, 10) + "," + io::fmt_g(lo + bin_width, 10) + "]";
    } else {
      label = ">" + io::fmt_g(lo, 10);
    }
    const surv::SurvivalDataset stratum(std::move(strata[s]), {});
    curves.push_back(surv::km_estimate(stratum, label, confidence_level));
  }
  return curves;
}

}  // namespace vaxwane::pipeline
