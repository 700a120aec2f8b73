#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vaxwane/pipeline/load.hpp"
#include "vaxwane/surv/types.hpp"

namespace vaxwane::pipeline {

struct ExclusionReport {
  long input_rows = 0;
  long included = 0;
  long excluded_window = 0;              // vaccinated outside [start, landmark)
  long excluded_pre_landmark_event = 0;  // event on or before the landmark
  long rejected_invalid = 0;             // event precedes vaccination
  std::vector<std::string> messages;
};

struct AnalysisDataset {
  surv::SurvivalDataset data;
  ExclusionReport exclusions;
};

/// Builds the landmark analysis table: keeps subjects vaccinated in
/// [vaccination_start, landmark), drops those with an event on or before the
/// landmark (left truncation), and derives z_delta (days from vaccination to
/// the landmark, stored as the first covariate column "z_delta"), T (whole
/// days from the landmark to event or censor date), and the event flag.
/// Events on the landmark itself count as pre-landmark.
AnalysisDataset build_analysis_dataset(const RawCohort& cohort, const AnalysisWindow& window);

struct PopulationTest {
  std::string label;
  long n_patients = 0;
  long n_events = 0;
  surv::TestResult offset;                    // the z_delta coefficient, HR per day
  std::vector<surv::TestResult> covariates;   // remaining model terms
  bool ok = false;
  std::string error;  // set when the fit failed
};

struct MechanismReport {
  PopulationTest full;
  std::optional<PopulationTest> sensitivity;  // refit on z_delta <= cap
  int sensitivity_cap_days = 90;
  double alpha = 0.05;
  std::string interpretation;
};

/// Fits the fully adjusted offset model (z_delta + all covariates) and, when
/// cap_days is given, refits on the recently-vaccinated subset z_delta <= cap.
/// Throws DataError("no events") when the full dataset has no events; fit
/// failures inside the sensitivity subset are reported, not thrown.
MechanismReport mechanism_test(const surv::SurvivalDataset& dataset,
                               const surv::FitOptions& options = {},
                               std::optional<int> cap_days = 90);

struct DualModelRow {
  std::string term;
  std::optional<surv::TestResult> proposed;
  std::optional<surv::TestResult> naive;
};

/// Fits the offset model and the standard Cox model (same covariates without
/// z_delta) on the identical dataset and lines their estimates up per term.
/// Requires at least one covariate besides z_delta.
std::vector<DualModelRow> dual_model_comparison(const surv::SurvivalDataset& dataset,
                                                const surv::FitOptions& options = {});

/// Kaplan-Meier curves stratified by z_delta in bins (0,w], (w,2w], ...,
/// with one final open stratum "> k*w" covering the largest offsets. Empty
/// strata are omitted. Curves are ordered by bin.
std::vector<surv::KMCurve> km_by_offset_bins(const surv::SurvivalDataset& dataset,
                                             double bin_width = 30.0,
                                             double confidence_level = 0.95);

}  // namespace vaxwane::pipeline
