#include "vaxwane/surv/partial_likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vaxwane/error.hpp"
#include "risk_sweep.hpp"

namespace vaxwane::surv {

namespace detail {

std::vector<double> covariate_buffer(const SurvivalDataset& data) {
  const std::size_t n = data.n_rows();
  const std::size_t p = data.n_covariates();
  std::vector<double> X(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& cov = data.rows()[i].covariates;
    std::copy(cov.begin(), cov.end(), X.begin() + static_cast<std::ptrdiff_t>(i * p));
  }
  return X;
}

RiskSweep::RiskSweep(const SurvivalDataset& data) : n_(data.n_rows()) {
  if (data.n_events() == 0) throw_no_events();

  entry_.resize(n_);
  time_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    entry_[i] = data.rows()[i].entry_time;
    time_[i] = data.rows()[i].time;
  }

  add_order_.resize(n_);
  std::iota(add_order_.begin(), add_order_.end(), 0);
  std::sort(add_order_.begin(), add_order_.end(),
            [&](int a, int b) { return time_[a] > time_[b]; });

  remove_order_.resize(n_);
  std::iota(remove_order_.begin(), remove_order_.end(), 0);
  std::sort(remove_order_.begin(), remove_order_.end(),
            [&](int a, int b) { return entry_[a] > entry_[b]; });

  event_rows_.reserve(data.n_events());
  for (int i : add_order_) {
    if (data.rows()[static_cast<std::size_t>(i)].event == 1) event_rows_.push_back(i);
  }
  // event_rows_ is sorted by time decreasing; group exact ties.
  std::size_t i = 0;
  while (i < event_rows_.size()) {
    const double t = time_[static_cast<std::size_t>(event_rows_[i])];
    std::size_t j = i;
    while (j < event_rows_.size() && time_[static_cast<std::size_t>(event_rows_[j])] == t) ++j;
    groups_.push_back({t, static_cast<int>(i), static_cast<int>(j - i)});
    i = j;
  }
}

template <bool WithDerivs>
RiskSweep::Eval RiskSweep::run(std::span<const double> X, const Eigen::VectorXd& beta,
                               TiesMethod ties) const {
  const std::size_t p = static_cast<std::size_t>(beta.size());
  if (X.size() != n_ * p) throw DataError("covariate/beta dimension mismatch");

  std::vector<double> eta(n_), w(n_);
  double eta_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_; ++i) {
    double e = 0.0;
    const double* xi = X.data() + i * p;
    for (std::size_t j = 0; j < p; ++j) e += xi[j] * beta[static_cast<Eigen::Index>(j)];
    eta[i] = e;
    eta_max = std::max(eta_max, e);
  }
  // Global shift: the partial likelihood is invariant to it and it keeps the
  // exponentials in range.
  for (std::size_t i = 0; i < n_; ++i) w[i] = std::exp(eta[i] - eta_max);

  Eval out;
  if constexpr (WithDerivs) {
    out.score = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
    out.information = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p),
                                            static_cast<Eigen::Index>(p));
  }

  double S0 = 0.0;
  Eigen::VectorXd S1, x, s_events, S1D, A1;
  Eigen::MatrixXd S2, S2D, A2;
  if constexpr (WithDerivs) {
    S1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
    S2 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
    x.resize(static_cast<Eigen::Index>(p));
    s_events.resize(static_cast<Eigen::Index>(p));
    S1D.resize(static_cast<Eigen::Index>(p));
    A1.resize(static_cast<Eigen::Index>(p));
    S2D.resize(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
    A2.resize(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  }

  auto load_row = [&](int k, Eigen::VectorXd& dst) {
    const double* xk = X.data() + static_cast<std::size_t>(k) * p;
    for (std::size_t j = 0; j < p; ++j) dst[static_cast<Eigen::Index>(j)] = xk[j];
  };

  std::size_t ai = 0, ri = 0;
  double loglik = 0.0;

  for (const auto& g : groups_) {
    const double t = g.time;
    while (ai < n_ && time_[static_cast<std::size_t>(add_order_[ai])] >= t) {
      const int k = add_order_[ai++];
      const double wk = w[static_cast<std::size_t>(k)];
      S0 += wk;
      if constexpr (WithDerivs) {
        load_row(k, x);
        S1.noalias() += wk * x;
        S2.noalias() += wk * x * x.transpose();
      }
    }
    while (ri < n_ && entry_[static_cast<std::size_t>(remove_order_[ri])] >= t) {
      const int k = remove_order_[ri++];
      const double wk = w[static_cast<std::size_t>(k)];
      S0 -= wk;
      if constexpr (WithDerivs) {
        load_row(k, x);
        S1.noalias() -= wk * x;
        S2.noalias() -= wk * x * x.transpose();
      }
    }

    const int d = g.count;
    double sum_eta = 0.0;
    double WD = 0.0;
    if constexpr (WithDerivs) {
      s_events.setZero();
      S1D.setZero();
      S2D.setZero();
    }
    for (int e = 0; e < d; ++e) {
      const int k = event_rows_[static_cast<std::size_t>(g.first + e)];
      sum_eta += eta[static_cast<std::size_t>(k)] - eta_max;
      const double wk = w[static_cast<std::size_t>(k)];
      WD += wk;
      if constexpr (WithDerivs) {
        load_row(k, x);
        s_events += x;
        S1D.noalias() += wk * x;
        S2D.noalias() += wk * x * x.transpose();
      }
    }

    loglik += sum_eta;
    if (ties == TiesMethod::Breslow || d == 1) {
      loglik -= d * std::log(S0);
      if constexpr (WithDerivs) {
        const Eigen::VectorXd xbar = S1 / S0;
        out.score.noalias() += s_events - d * xbar;
        out.information.noalias() += d * (S2 / S0 - xbar * xbar.transpose());
      }
    } else {
      for (int l = 0; l < d; ++l) {
        const double f = static_cast<double>(l) / d;
        const double A0 = S0 - f * WD;
        loglik -= std::log(A0);
        if constexpr (WithDerivs) {
          A1 = S1 - f * S1D;
          A2 = S2 - f * S2D;
          const Eigen::VectorXd xbar = A1 / A0;
          out.score.noalias() -= xbar;
          out.information.noalias() += A2 / A0 - xbar * xbar.transpose();
        }
      }
      if constexpr (WithDerivs) out.score.noalias() += s_events;
    }
  }

  out.loglik = loglik;
  if constexpr (WithDerivs) {
    // Symmetrize away accumulation noise.
    out.information = 0.5 * (out.information + out.information.transpose()).eval();
  }
  return out;
}

double RiskSweep::loglik(std::span<const double> X, const Eigen::VectorXd& beta,
                         TiesMethod ties) const {
  return run<false>(X, beta, ties).loglik;
}

RiskSweep::Eval RiskSweep::eval(std::span<const double> X, const Eigen::VectorXd& beta,
                                TiesMethod ties) const {
  return run<true>(X, beta, ties);
}

std::vector<RiskSweep::BaselineJump> RiskSweep::breslow_jumps(
    std::span<const double> weights) const {
  if (weights.size() != n_) throw DataError("weight/row dimension mismatch");
  double S0 = 0.0;
  std::size_t ai = 0, ri = 0;
  std::vector<BaselineJump> jumps;
  jumps.reserve(groups_.size());
  for (const auto& g : groups_) {
    const double t = g.time;
    while (ai < n_ && time_[static_cast<std::size_t>(add_order_[ai])] >= t) {
      S0 += weights[static_cast<std::size_t>(add_order_[ai++])];
    }
    while (ri < n_ && entry_[static_cast<std::size_t>(remove_order_[ri])] >= t) {
      S0 -= weights[static_cast<std::size_t>(remove_order_[ri++])];
    }
    jumps.push_back({t, static_cast<double>(g.count) / S0});
  }
  std::reverse(jumps.begin(), jumps.end());
  return jumps;
}

}  // namespace detail

namespace {

Eigen::VectorXd to_vector(std::span<const double> beta, std::size_t p) {
  if (beta.size() != p) throw DataError("beta length does not match covariate count");
  Eigen::VectorXd b(static_cast<Eigen::Index>(p));
  for (std::size_t j = 0; j < p; ++j) b[static_cast<Eigen::Index>(j)] = beta[j];
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    if (!std::isfinite(b[j])) throw DataError("beta must be finite");
  }
  return b;
}

}  // namespace

double log_partial_likelihood(const SurvivalDataset& data, std::span<const double> beta,
                              TiesMethod ties) {
  const detail::RiskSweep sweep(data);
  const auto X = detail::covariate_buffer(data);
  return sweep.loglik(X, to_vector(beta, data.n_covariates()), ties);
}

ScoreInfo score_and_information(const SurvivalDataset& data, std::span<const double> beta,
                                TiesMethod ties) {
  const detail::RiskSweep sweep(data);
  const auto X = detail::covariate_buffer(data);
  auto ev = sweep.eval(X, to_vector(beta, data.n_covariates()), ties);
  return {std::move(ev.score), std::move(ev.information)};
}

}  // namespace vaxwane::surv
