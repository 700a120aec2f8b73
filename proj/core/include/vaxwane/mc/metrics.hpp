#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "vaxwane/mc/estimators.hpp"
#include "vaxwane/sim/hazard.hpp"

namespace vaxwane::mc {

/// One long-format Monte Carlo summary row. Parameters that do not apply to
/// the row's mechanism or metric are NaN and export as empty CSV cells.
struct MetricRow {
  std::string cell_id;
  sim::Mechanism mechanism = sim::Mechanism::Waning;
  double a = 0, b = 0, d = 0, r = 0;  // waning parameters (NaN for new strain)
  double k = 0, c = 0;                // new-strain parameters (NaN for waning)
  long n_subjects = 0;
  bool subgroup = false;
  double beta1_true = 0;  // NaN when no subgroup
  EstimatorKind estimator = EstimatorKind::ProposedOffset;
  std::string metric;  // power | type1 | mean_bias | coverage
  double alpha = 0;    // NaN for bias/coverage rows
  double value = 0;
  double mc_se = 0;
  long b_effective = 0;
};

struct MetricsTable {
  std::vector<MetricRow> rows;

  /// Header: cell_id,mechanism,a,b,d,r,k,c,N,subgroup,beta1,estimator,metric,
  ///         alpha,value,mc_se,B_effective
  void write_csv(std::ostream& out) const;
  nlohmann::json to_json() const;
};

/// Plot-ready extracts, one per reproduced figure/table.
void write_power_curve_csv(const MetricsTable& table, double alpha, bool subgroup,
                           std::ostream& out);
void write_bias_coverage_csv(const MetricsTable& table, std::ostream& out);
void write_strain_bias_csv(const MetricsTable& table, std::ostream& out);
void write_type1_csv(const MetricsTable& table, std::ostream& out);

}  // namespace vaxwane::mc
