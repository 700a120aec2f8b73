#include "vaxwane/surv/cox.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "vaxwane/error.hpp"
#include "risk_sweep.hpp"

namespace vaxwane::surv {

namespace {

constexpr double kScoreConverged = 1e-5;  // max-norm on the internal scale
constexpr double kBetaEscape = 50.0;      // original-scale coefficient bound
constexpr double kSeStdExplosion = 1e3;   // internal-scale SE signalling separation
constexpr int kMaxHalvings = 10;

struct Standardization {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;
};

Standardization standardize_in_place(std::vector<double>& X, std::size_t n, std::size_t p,
                                     const std::vector<std::string>& names) {
  Standardization s;
  s.mean.resize(static_cast<Eigen::Index>(p));
  s.scale.resize(static_cast<Eigen::Index>(p));
  for (std::size_t j = 0; j < p; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += X[i * p + j];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = X[i * p + j] - mean;
      ss += d * d;
    }
    const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    if (!(sd > 1e-12 * (1.0 + std::fabs(mean)))) {
      throw_non_identifiable("covariate '" + names[j] + "' is constant");
    }
    s.mean[static_cast<Eigen::Index>(j)] = mean;
    s.scale[static_cast<Eigen::Index>(j)] = sd;
    for (std::size_t i = 0; i < n; ++i) X[i * p + j] = (X[i * p + j] - mean) / sd;
  }
  return s;
}

/// Solves information * x = rhs and inverts via an eigendecomposition so that
/// rank deficiency is detected reliably for these small matrices.
struct InformationSolver {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;

  explicit InformationSolver(const Eigen::MatrixXd& information) : eig(information) {
    const auto& ev = eig.eigenvalues();
    const double max_ev = ev[ev.size() - 1];
    if (!(max_ev > 0.0) || ev[0] <= max_ev * 1e-10) {
      throw_non_identifiable("singular information matrix");
    }
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    return eig.eigenvectors() *
           (eig.eigenvalues().cwiseInverse().asDiagonal() * (eig.eigenvectors().transpose() * rhs));
  }

  Eigen::MatrixXd inverse() const {
    return eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() *
           eig.eigenvectors().transpose();
  }
};

}  // namespace

CoxFit cox_fit(const SurvivalDataset& data, const FitOptions& options) {
  const std::size_t n = data.n_rows();
  const std::size_t p = data.n_covariates();
  if (p == 0) throw DataError("model has no covariates");
  if (!(options.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (!(options.confidence_level > 0.0 && options.confidence_level < 1.0)) {
    throw ConfigError("confidence_level must be in (0, 1)");
  }

  const detail::RiskSweep sweep(data);
  auto X = detail::covariate_buffer(data);
  const Standardization stdz = standardize_in_place(X, n, p, data.covariate_names());

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
  auto ev = sweep.eval(X, beta, options.ties);
  double loglik = ev.loglik;

  CoxFit fit;
  fit.null_log_likelihood = loglik;
  fit.log_likelihood_path.push_back(loglik);
  fit.ties = options.ties;
  fit.n_events = data.n_events();
  fit.n_rows = n;
  fit.covariate_names = data.covariate_names();

  bool converged = false;
  int iterations = 0;
  while (iterations < options.max_iterations) {
    const InformationSolver solver(ev.information);
    const Eigen::VectorXd direction = solver.solve(ev.score);

    double step = 1.0;
    double loglik_try = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd beta_try;
    bool accepted = false;
    for (int h = 0; h <= kMaxHalvings; ++h) {
      beta_try = beta + step * direction;
      loglik_try = sweep.loglik(X, beta_try, options.ties);
      if (std::isfinite(loglik_try) && loglik_try > loglik) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // likelihood cannot be improved locally

    beta = beta_try;
    ++iterations;
    fit.log_likelihood_path.push_back(loglik_try);

    for (std::size_t j = 0; j < p; ++j) {
      const double original =
          beta[static_cast<Eigen::Index>(j)] / stdz.scale[static_cast<Eigen::Index>(j)];
      if (std::fabs(original) > kBetaEscape) {
        throw_separation("coefficient for '" + data.covariate_names()[j] + "' diverged");
      }
    }

    const double delta = loglik_try - loglik;
    loglik = loglik_try;
    ev = sweep.eval(X, beta, options.ties);
    if (delta <= options.tolerance * std::max(1.0, std::fabs(loglik)) &&
        ev.score.cwiseAbs().maxCoeff() <= kScoreConverged) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    // Stalled or out of budget: the fit still counts as converged when it sits
    // at a stationary point (covers data whose maximizer is exactly beta = 0).
    converged = ev.score.cwiseAbs().maxCoeff() <= kScoreConverged;
  }

  const InformationSolver final_solver(ev.information);
  const Eigen::MatrixXd cov_internal = final_solver.inverse();
  for (std::size_t j = 0; j < p; ++j) {
    const double se = std::sqrt(std::max(0.0, cov_internal(static_cast<Eigen::Index>(j),
                                                           static_cast<Eigen::Index>(j))));
    if (se > kSeStdExplosion) {
      throw_separation("flat likelihood in '" + data.covariate_names()[j] + "'");
    }
  }

  fit.beta.resize(p);
  fit.covariance.resize(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < p; ++i) {
    fit.beta[i] = beta[static_cast<Eigen::Index>(i)] / stdz.scale[static_cast<Eigen::Index>(i)];
    for (std::size_t j = 0; j < p; ++j) {
      fit.covariance(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          cov_internal(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) /
          (stdz.scale[static_cast<Eigen::Index>(i)] * stdz.scale[static_cast<Eigen::Index>(j)]);
    }
  }
  fit.log_likelihood = loglik;
  fit.iterations = iterations;
  fit.converged = converged;
  return fit;
}

}  // namespace vaxwane::surv
