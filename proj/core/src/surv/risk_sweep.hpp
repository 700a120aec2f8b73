#pragma once

// Internal risk-set sweep shared by the likelihood ops, the Newton fitter,
// and the Breslow baseline. Not installed.

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "vaxwane/surv/types.hpp"

namespace vaxwane::surv::detail {

/// Precomputed sweep over distinct event times in decreasing order.
/// Rows enter the running risk-set sums when the sweep passes their follow-up
/// time and leave it when it passes their entry time, so delayed entry costs
/// nothing extra. Throws DataError("no events") when no row has an event.
class RiskSweep {
 public:
  explicit RiskSweep(const SurvivalDataset& data);

  struct Eval {
    double loglik = 0.0;
    Eigen::VectorXd score;
    Eigen::MatrixXd information;
  };

  /// X is a row-major n*p covariate buffer (possibly transformed).
  double loglik(std::span<const double> X, const Eigen::VectorXd& beta, TiesMethod ties) const;
  Eval eval(std::span<const double> X, const Eigen::VectorXd& beta, TiesMethod ties) const;

  /// Per-event-time Breslow increments d_j / sum_{R_j} w_k given absolute
  /// risk weights w (not shifted). Returned in increasing time order.
  struct BaselineJump {
    double time;
    double increment;
  };
  std::vector<BaselineJump> breslow_jumps(std::span<const double> weights) const;

  std::size_t n_rows() const { return n_; }

 private:
  template <bool WithDerivs>
  Eval run(std::span<const double> X, const Eigen::VectorXd& beta, TiesMethod ties) const;

  struct EventGroup {
    double time;
    int first;  // offset into event_rows_
    int count;
  };

  std::size_t n_ = 0;
  std::vector<double> entry_;
  std::vector<double> time_;
  std::vector<int> add_order_;     // row indices by follow-up time, decreasing
  std::vector<int> remove_order_;  // row indices by entry time, decreasing
  std::vector<int> event_rows_;    // event rows grouped by tied time, decreasing
  std::vector<EventGroup> groups_;
};

/// Flattens the dataset's covariates into a row-major n*p buffer.
std::vector<double> covariate_buffer(const SurvivalDataset& data);

}  // namespace vaxwane::surv::detail
