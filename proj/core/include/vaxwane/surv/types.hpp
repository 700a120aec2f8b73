#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace vaxwane::surv {

/// One subject: observed from entry_time (exclusive) to time, with an event
/// indicator and a covariate vector. entry_time > 0 encodes delayed entry.
struct SurvivalRow {
  double entry_time = 0.0;
  double time = 0.0;
  int event = 0;
  std::vector<double> covariates;
};

/// Immutable analysis table. Validates its invariants on construction:
/// time > entry_time >= 0, event in {0,1}, covariate vectors of uniform
/// length with finite entries, at least one row.
class SurvivalDataset {
 public:
  SurvivalDataset(std::vector<SurvivalRow> rows, std::vector<std::string> covariate_names);

  const std::vector<SurvivalRow>& rows() const { return rows_; }
  const std::vector<std::string>& covariate_names() const { return covariate_names_; }
  std::size_t n_rows() const { return rows_.size(); }
  std::size_t n_covariates() const { return covariate_names_.size(); }
  std::size_t n_events() const { return n_events_; }
  bool has_delayed_entry() const { return has_delayed_entry_; }

  /// Index of a covariate column by name, or -1 when absent.
  int covariate_index(std::string_view name) const;

 private:
  std::vector<SurvivalRow> rows_;
  std::vector<std::string> covariate_names_;
  std::size_t n_events_ = 0;
  bool has_delayed_entry_ = false;
};

enum class TiesMethod { Breslow, Efron };

std::string_view ties_method_name(TiesMethod m);

struct FitOptions {
  TiesMethod ties = TiesMethod::Efron;
  int max_iterations = 25;
  double tolerance = 1e-9;  // relative change in log partial likelihood
  double confidence_level = 0.95;
};

/// Result of maximum partial-likelihood estimation. Coefficients and the
/// covariance are reported on the original covariate scale.
struct CoxFit {
  std::vector<double> beta;
  Eigen::MatrixXd covariance;
  double log_likelihood = 0.0;
  double null_log_likelihood = 0.0;
  std::vector<double> log_likelihood_path;  // per accepted Newton step
  int iterations = 0;
  bool converged = false;
  TiesMethod ties = TiesMethod::Efron;
  std::size_t n_events = 0;
  std::size_t n_rows = 0;
  std::vector<std::string> covariate_names;
};

struct TestResult {
  std::string term;
  double estimate = 0.0;  // log-hazard scale
  double std_error = 0.0;
  double z_value = 0.0;
  double p_value = 1.0;
  double hazard_ratio = 1.0;
  double ci_lower = 1.0;
  double ci_upper = 1.0;
  double confidence_level = 0.95;
};

/// Product-limit curve for one stratum. Rows are the distinct event times.
struct KMCurve {
  std::string stratum_label;
  std::vector<double> times;
  std::vector<double> survival;
  std::vector<double> greenwood_se;
  std::vector<double> ci_lower;
  std::vector<double> ci_upper;
  std::vector<long> at_risk;
  std::vector<long> n_events;
  std::size_t n_rows = 0;
};

/// Right-continuous step function; value is 0 before the first jump.
struct StepFunction {
  std::vector<double> times;   // strictly increasing
  std::vector<double> values;  // value from times[i] onward

  double operator()(double t) const;
};

/// Prints a matrix as plain decimal text with >= 10 significant digits.
std::string format_matrix(const Eigen::MatrixXd& m);

}  // namespace vaxwane::surv
