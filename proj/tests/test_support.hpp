#pragma once

// Shared test utilities: dataset builders, independent numerical oracles
// (finite differences, adaptive quadrature, grid-search maximizers), and a
// deterministic random-dataset generator. Everything here depends only on
// log_partial_likelihood, never on the Newton fitter it is used to check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "vaxwane/rng.hpp"
#include "vaxwane/surv/partial_likelihood.hpp"
#include "vaxwane/surv/types.hpp"

namespace vaxwane::test {

/// Rows given as (time, event, covariates...); entry_time 0.
inline surv::SurvivalDataset make_dataset(
    const std::vector<std::tuple<double, int, std::vector<double>>>& spec,
    std::vector<std::string> names) {
  std::vector<surv::SurvivalRow> rows;
  for (const auto& [time, event, covs] : spec) {
    rows.push_back({0.0, time, event, covs});
  }
  return surv::SurvivalDataset(std::move(rows), std::move(names));
}

/// The three-subject single-covariate dataset used across the fitter tests:
/// events at t=1,2,3 with x = 1,0,1.
inline surv::SurvivalDataset d1() {
  return make_dataset({{1, 1, {1.0}}, {2, 1, {0.0}}, {3, 1, {1.0}}}, {"x"});
}

struct RandomDatasetOptions {
  bool integer_times = false;  // forces ties
  bool delayed_entry = false;
  int max_rows = 30;
  int max_covariates = 3;
};

/// Deterministic small random dataset; guarantees at least one event and no
/// constant covariate column.
inline surv::SurvivalDataset random_dataset(std::uint64_t seed,
                                            const RandomDatasetOptions& opt = {}) {
  SplitMix64 rng(mix_seed(0x7e57da7aull, seed));
  for (int attempt = 0; attempt < 200; ++attempt) {
    const int n = 2 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(opt.max_rows - 1));
    const int p =
        1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(opt.max_covariates));
    std::vector<bool> binary(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) binary[static_cast<std::size_t>(j)] = rng.next_unit_open() < 0.5;

    std::vector<surv::SurvivalRow> rows;
    int events = 0;
    for (int i = 0; i < n; ++i) {
      surv::SurvivalRow row;
      if (opt.delayed_entry && !opt.integer_times && rng.next_unit_open() < 0.35) {
        row.entry_time = rng.next_unit_open() * 3.0;
      }
      row.time = opt.integer_times
                     ? row.entry_time + 1.0 + static_cast<double>(rng.next_u64() % 6)
                     : row.entry_time + 0.05 + rng.next_unit_open() * 10.0;
      row.event = rng.next_unit_open() < 0.65 ? 1 : 0;
      events += row.event;
      for (int j = 0; j < p; ++j) {
        row.covariates.push_back(binary[static_cast<std::size_t>(j)]
                                     ? static_cast<double>(rng.next_u64() % 2)
                                     : 2.0 * rng.next_unit_open() - 1.0);
      }
      rows.push_back(std::move(row));
    }
    if (events == 0) continue;
    bool constant = false;
    for (int j = 0; j < p && !constant; ++j) {
      const double first = rows[0].covariates[static_cast<std::size_t>(j)];
      constant = std::all_of(rows.begin(), rows.end(), [&](const surv::SurvivalRow& r) {
        return r.covariates[static_cast<std::size_t>(j)] == first;
      });
    }
    if (constant) continue;

    std::vector<std::string> names;
    for (int j = 0; j < p; ++j) names.push_back("x" + std::to_string(j));
    return surv::SurvivalDataset(std::move(rows), std::move(names));
  }
  throw std::runtime_error("random_dataset failed to generate a usable dataset");
}

/// Central finite differences of the log partial likelihood.
inline std::vector<double> fd_score(const surv::SurvivalDataset& data,
                                    std::vector<double> beta, surv::TiesMethod ties,
                                    double h = 1e-5) {
  std::vector<double> g(beta.size());
  for (std::size_t j = 0; j < beta.size(); ++j) {
    const double saved = beta[j];
    beta[j] = saved + h;
    const double up = surv::log_partial_likelihood(data, beta, ties);
    beta[j] = saved - h;
    const double down = surv::log_partial_likelihood(data, beta, ties);
    beta[j] = saved;
    g[j] = (up - down) / (2.0 * h);
  }
  return g;
}

/// Central finite differences of the analytic score (checks the information).
inline Eigen::MatrixXd fd_information(const surv::SurvivalDataset& data,
                                      std::vector<double> beta, surv::TiesMethod ties,
                                      double h = 1e-4) {
  const auto p = static_cast<Eigen::Index>(beta.size());
  Eigen::MatrixXd info(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double saved = beta[static_cast<std::size_t>(j)];
    beta[static_cast<std::size_t>(j)] = saved + h;
    const auto up = surv::score_and_information(data, beta, ties).score;
    beta[static_cast<std::size_t>(j)] = saved - h;
    const auto down = surv::score_and_information(data, beta, ties).score;
    beta[static_cast<std::size_t>(j)] = saved;
    info.col(j) = -(up - down) / (2.0 * h);
  }
  return 0.5 * (info + info.transpose());
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature; independent oracle for cumulative hazards.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// Brute-force maximizer of the log partial likelihood, independent of the
/// Newton path. One covariate: staged grid bracketing down to step 1e-6.
/// Several covariates: cyclic coordinate search with a golden-section shrink.
inline std::vector<double> grid_maximize(const surv::SurvivalDataset& data,
                                         surv::TiesMethod ties) {
  const std::size_t p = data.n_covariates();
  auto value = [&](const std::vector<double>& b) {
    return surv::log_partial_likelihood(data, b, ties);
  };

  if (p == 1) {
    double best = 0.0, best_val = -1e300;
    for (double step : {1e-2, 1e-4, 1e-6}) {
      const double lo = step == 1e-2 ? -5.0 : best - 200.0 * step;
      const double hi = step == 1e-2 ? 5.0 : best + 200.0 * step;
      best_val = -1e300;
      double arg = lo;
      for (double b = lo; b <= hi; b += step) {
        const double v = value({b});
        if (v > best_val) {
          best_val = v;
          arg = b;
        }
      }
      best = arg;
    }
    return {best};
  }

  std::vector<double> beta(p, 0.0);
  constexpr double kGolden = 0.6180339887498949;
  for (int sweep = 0; sweep < 400; ++sweep) {
    double max_move = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      double lo = beta[j] - 5.0, hi = beta[j] + 5.0;
      auto slice = [&](double bj) {
        std::vector<double> b = beta;
        b[j] = bj;
        return value(b);
      };
      double x1 = hi - kGolden * (hi - lo);
      double x2 = lo + kGolden * (hi - lo);
      double f1 = slice(x1), f2 = slice(x2);
      while (hi - lo > 1e-10) {
        if (f1 < f2) {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + kGolden * (hi - lo);
          f2 = slice(x2);
        } else {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - kGolden * (hi - lo);
          f1 = slice(x1);
        }
      }
      const double next = 0.5 * (lo + hi);
      max_move = std::max(max_move, std::fabs(next - beta[j]));
      beta[j] = next;
    }
    if (max_move < 1e-9) break;
  }
  return beta;
}

}  // namespace vaxwane::test
