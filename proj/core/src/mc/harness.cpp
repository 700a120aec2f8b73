#include "vaxwane/mc/harness.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "vaxwane/error.hpp"
#include "vaxwane/io/csv.hpp"
#include "vaxwane/rng.hpp"
#include "vaxwane/stats/normal.hpp"
#include "vaxwane/surv/cox.hpp"
#include "vaxwane/surv/wald.hpp"

namespace vaxwane::mc {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::string CellConfig::label() const {
  std::ostringstream out;
  if (hazard.mechanism == sim::Mechanism::Waning) {
    out << "MW_a" << io::fmt_g(hazard.lowest_rate, 6) << "_b" << io::fmt_g(hazard.highest_rate, 6)
        << "_d" << io::fmt_g(hazard.flat_days, 6) << "_r" << io::fmt_g(hazard.rise_per_day, 6);
  } else {
    out << "MS_k" << io::fmt_g(hazard.pre_strain_rate, 6) << "_c"
        << io::fmt_g(hazard.post_strain_rate, 6) << "_s" << io::fmt_g(hazard.strain_day, 6);
  }
  out << "_N" << n_subjects << (subgroup.enabled ? "_sub1" : "_sub0");
  return out.str();
}

std::uint64_t CellConfig::stable_id() const {
  std::uint64_t h = kGoldenGamma;
  auto fold = [&h](std::uint64_t v) { h = mix_seed(h, v); };
  auto fold_d = [&fold](double v) { fold(std::bit_cast<std::uint64_t>(v)); };
  fold(hazard.mechanism == sim::Mechanism::Waning ? 1u : 2u);
  fold_d(hazard.lowest_rate);
  fold_d(hazard.highest_rate);
  fold_d(hazard.flat_days);
  fold_d(hazard.rise_per_day);
  fold_d(hazard.pre_strain_rate);
  fold_d(hazard.post_strain_rate);
  fold_d(hazard.strain_day);
  fold(static_cast<std::uint64_t>(n_subjects));
  fold(subgroup.enabled ? 1u : 0u);
  if (subgroup.enabled) {
    fold_d(subgroup.beta1);
    fold_d(subgroup.fraction);
  }
  fold_d(vaccination_window_days);
  fold_d(followup_days);
  return h;
}

sim::CohortConfig CellConfig::cohort_config(std::uint64_t seed) const {
  sim::CohortConfig c;
  c.n_subjects = n_subjects;
  c.vaccination_window_days = vaccination_window_days;
  c.followup_days = followup_days;
  c.subgroup = subgroup;
  c.hazard = hazard;
  c.seed = seed;
  return c;
}

void ExperimentConfig::validate() const {
  if (cells.empty()) throw ConfigError("experiment grid has no cells");
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (alphas.empty()) throw ConfigError("alphas must be non-empty");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("alpha levels must be in (0, 1)");
  }
  if (estimators.empty()) throw ConfigError("estimator list must be non-empty");
  for (const auto& cell : cells) cell.cohort_config(0).validate();
}

ReplicationResult run_replication(const CellConfig& cell, int rep_index,
                                  std::uint64_t base_seed,
                                  std::span<const EstimatorKind> estimators) {
  ReplicationResult result;
  result.cell_id = cell.stable_id();
  result.rep_index = rep_index;

  const std::uint64_t cohort_seed =
      mix_seed(mix_seed(base_seed, result.cell_id), static_cast<std::uint64_t>(rep_index));
  const auto cohort = sim::generate_cohort(cell.cohort_config(cohort_seed));
  const double q95 = stats::normal_quantile(0.975);

  for (EstimatorKind kind : estimators) {
    if (estimator_requires_subgroup(kind) && !cell.subgroup.enabled) continue;
    auto& slot = result.estimators[static_cast<std::size_t>(kind)];
    slot.attempted = true;
    try {
      const auto dataset = build_estimator_dataset(cohort, kind);
      const auto fit = surv::cox_fit(dataset);
      if (!fit.converged) continue;
      slot.converged = true;
      if (kind == EstimatorKind::ProposedOffset) {
        const auto offset = surv::wald_test(fit, 0);
        slot.beta_delta = offset.estimate;
        slot.se_delta = offset.std_error;
        slot.p_delta = offset.p_value;
        if (cell.subgroup.enabled) {
          const auto sub = surv::wald_test(fit, 1);
          slot.beta1 = sub.estimate;
          slot.se1 = sub.std_error;
          slot.covered = std::fabs(sub.estimate - cell.subgroup.beta1) <= q95 * sub.std_error;
        }
      } else {
        const auto sub = surv::wald_test(fit, 0);
        slot.beta1 = sub.estimate;
        slot.se1 = sub.std_error;
        slot.covered = std::fabs(sub.estimate - cell.subgroup.beta1) <= q95 * sub.std_error;
      }
    } catch (const DataError&) {
      slot.converged = false;
    }
  }
  return result;
}

namespace {

void parallel_for(int count, int workers, const std::function<void(int)>& body) {
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  auto drain = [&]() {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
  };
  std::vector<std::thread> pool;
  const int spawned = std::min(workers, count) - 1;
  pool.reserve(static_cast<std::size_t>(spawned));
  for (int w = 0; w < spawned; ++w) pool.emplace_back(drain);
  drain();
  for (auto& t : pool) t.join();
}

MetricRow base_row(const CellConfig& cell) {
  MetricRow row;
  row.cell_id = cell.label();
  row.mechanism = cell.hazard.mechanism;
  if (cell.hazard.mechanism == sim::Mechanism::Waning) {
    row.a = cell.hazard.lowest_rate;
    row.b = cell.hazard.highest_rate;
    row.d = cell.hazard.flat_days;
    row.r = cell.hazard.rise_per_day;
    row.k = kNaN;
    row.c = kNaN;
  } else {
    row.a = kNaN;
    row.b = kNaN;
    row.d = kNaN;
    row.r = kNaN;
    row.k = cell.hazard.pre_strain_rate;
    row.c = cell.hazard.post_strain_rate;
  }
  row.n_subjects = cell.n_subjects;
  row.subgroup = cell.subgroup.enabled;
  row.beta1_true = cell.subgroup.enabled ? cell.subgroup.beta1 : kNaN;
  row.alpha = kNaN;
  return row;
}

void aggregate_cell(const CellConfig& cell, const ExperimentConfig& config,
                    const std::vector<ReplicationResult>& reps, MetricsTable& table) {
  // Rejection rates of the mechanism test (always from ProposedOffset).
  {
    long b_eff = 0, total = 0;
    for (const auto& rep : reps) {
      const auto& e = rep.of(EstimatorKind::ProposedOffset);
      if (e.attempted) {
        ++total;
        if (e.converged) ++b_eff;
      }
    }
    if (total > 0) {
      const bool waning = cell.hazard.mechanism == sim::Mechanism::Waning;
      for (double alpha : config.alphas) {
        long rejected = 0;
        for (const auto& rep : reps) {
          const auto& e = rep.of(EstimatorKind::ProposedOffset);
          if (e.attempted && e.converged && e.p_delta <= alpha) ++rejected;
        }
        MetricRow row = base_row(cell);
        row.estimator = EstimatorKind::ProposedOffset;
        row.metric = waning ? "power" : "type1";
        row.alpha = alpha;
        if (b_eff > 0) {
          const double rate = static_cast<double>(rejected) / static_cast<double>(b_eff);
          row.value = rate;
          row.mc_se = std::sqrt(rate * (1.0 - rate) / static_cast<double>(b_eff));
        } else {
          row.value = kNaN;
          row.mc_se = kNaN;
        }
        row.b_effective = b_eff;
        table.rows.push_back(std::move(row));
      }
    }
  }

  if (!cell.subgroup.enabled) return;

  // Bias and coverage of the subgroup coefficient, per estimator.
  for (EstimatorKind kind : config.estimators) {
    long b_eff = 0, total = 0, covered = 0;
    double sum = 0.0;
    for (const auto& rep : reps) {
      const auto& e = rep.of(kind);
      if (!e.attempted) continue;
      ++total;
      if (!e.converged) continue;
      ++b_eff;
      sum += e.beta1;
      if (e.covered) ++covered;
    }
    if (total == 0) continue;

    MetricRow bias = base_row(cell);
    bias.estimator = kind;
    bias.metric = "mean_bias";
    bias.b_effective = b_eff;
    MetricRow cover = base_row(cell);
    cover.estimator = kind;
    cover.metric = "coverage";
    cover.b_effective = b_eff;

    if (b_eff > 0) {
      const double mean = sum / static_cast<double>(b_eff);
      double ss = 0.0;
      for (const auto& rep : reps) {
        const auto& e = rep.of(kind);
        if (e.attempted && e.converged) {
          const double dev = e.beta1 - mean;
          ss += dev * dev;
        }
      }
      const double sd = b_eff > 1 ? std::sqrt(ss / static_cast<double>(b_eff - 1)) : 0.0;
      bias.value = mean - cell.subgroup.beta1;
      bias.mc_se = sd / std::sqrt(static_cast<double>(b_eff));
      const double cov = static_cast<double>(covered) / static_cast<double>(b_eff);
      cover.value = cov;
      cover.mc_se = std::sqrt(cov * (1.0 - cov) / static_cast<double>(b_eff));
    } else {
      bias.value = kNaN;
      bias.mc_se = kNaN;
      cover.value = kNaN;
      cover.mc_se = kNaN;
    }
    table.rows.push_back(std::move(bias));
    table.rows.push_back(std::move(cover));
  }
}

}  // namespace

MetricsTable run_grid(const ExperimentConfig& config) {
  config.validate();
  int workers = config.workers;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }

  MetricsTable table;
  std::vector<ReplicationResult> reps(static_cast<std::size_t>(config.replications));
  for (const auto& cell : config.cells) {
    parallel_for(config.replications, workers, [&](int rep) {
      reps[static_cast<std::size_t>(rep)] =
          run_replication(cell, rep, config.base_seed, config.estimators);
    });
    aggregate_cell(cell, config, reps, table);
  }
  return table;
}

ExperimentConfig default_paper_grid(GridVariant variant) {
  const double a = 1e-4, b = 7e-4;
  const std::vector<double> flat_days{90, 180, 240};
  const std::vector<double> rates_no_sub{1e-6, 5e-6, 1e-5, 5e-5, 1e-4};
  const std::vector<double> rates_sub{1e-8, 1e-7, 1e-6, 1e-5};
  const std::vector<double> strain_rates{1e-4, 5e-4, 1e-3, 5e-3, 1e-2};
  const std::vector<long> sizes{500, 1000, 10000, 100000};
  const double pre_strain = 1e-4;  // not part of the published table; see docs

  ExperimentConfig config;
  config.replications = 1000;
  const bool with_sub = variant == GridVariant::WithSubgroup;
  if (!with_sub) config.estimators = {EstimatorKind::ProposedOffset};

  sim::SubgroupConfig subgroup;
  subgroup.enabled = with_sub;

  for (long n : sizes) {
    for (double d : flat_days) {
      for (double r : with_sub ? rates_sub : rates_no_sub) {
        CellConfig cell;
        cell.hazard = sim::HazardSpec::waning(a, b, d, r);
        cell.n_subjects = n;
        cell.subgroup = subgroup;
        config.cells.push_back(cell);
      }
    }
  }
  for (long n : sizes) {
    for (double c : strain_rates) {
      CellConfig cell;
      cell.hazard = sim::HazardSpec::new_strain(pre_strain, c, /*strain_day=*/365.0);
      cell.n_subjects = n;
      cell.subgroup = subgroup;
      config.cells.push_back(cell);
    }
  }
  return config;
}

void apply_desk_scale(ExperimentConfig& config) {
  if (config.replications > 500) config.replications = 500;
  std::erase_if(config.cells, [](const CellConfig& c) { return c.n_subjects > 10000; });
}

}  // namespace vaxwane::mc
