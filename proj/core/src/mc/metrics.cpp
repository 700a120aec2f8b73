#include "vaxwane/mc/metrics.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <ostream>

#include "vaxwane/io/csv.hpp"

namespace vaxwane::mc {

namespace {

std::string cell_or_empty(double v, int digits = 12) {
  return std::isnan(v) ? std::string() : io::fmt_g(v, digits);
}

const char* mechanism_name(sim::Mechanism m) {
  return m == sim::Mechanism::Waning ? "waning" : "new_strain";
}

}  // namespace

void MetricsTable::write_csv(std::ostream& out) const {
  out << "cell_id,mechanism,a,b,d,r,k,c,N,subgroup,beta1,estimator,metric,alpha,value,"
         "mc_se,B_effective\n";
  for (const auto& row : rows) {
    out << row.cell_id << ',' << mechanism_name(row.mechanism) << ',' << cell_or_empty(row.a)
        << ',' << cell_or_empty(row.b) << ',' << cell_or_empty(row.d) << ','
        << cell_or_empty(row.r) << ',' << cell_or_empty(row.k) << ',' << cell_or_empty(row.c)
        << ',' << row.n_subjects << ',' << (row.subgroup ? 1 : 0) << ','
        << cell_or_empty(row.beta1_true) << ',' << estimator_name(row.estimator) << ','
        << row.metric << ',' << cell_or_empty(row.alpha) << ',' << cell_or_empty(row.value)
        << ',' << cell_or_empty(row.mc_se) << ',' << row.b_effective << '\n';
  }
}

nlohmann::json MetricsTable::to_json() const {
  auto number_or_null = [](double v) {
    return std::isnan(v) ? nlohmann::json() : nlohmann::json(v);
  };
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    arr.push_back({{"cell_id", row.cell_id},
                   {"mechanism", mechanism_name(row.mechanism)},
                   {"a", number_or_null(row.a)},
                   {"b", number_or_null(row.b)},
                   {"d", number_or_null(row.d)},
                   {"r", number_or_null(row.r)},
                   {"k", number_or_null(row.k)},
                   {"c", number_or_null(row.c)},
                   {"N", row.n_subjects},
                   {"subgroup", row.subgroup},
                   {"beta1", number_or_null(row.beta1_true)},
                   {"estimator", std::string(estimator_name(row.estimator))},
                   {"metric", row.metric},
                   {"alpha", number_or_null(row.alpha)},
                   {"value", number_or_null(row.value)},
                   {"mc_se", number_or_null(row.mc_se)},
                   {"B_effective", row.b_effective}});
  }
  return nlohmann::json{{"rows", arr}};
}

void write_power_curve_csv(const MetricsTable& table, double alpha, bool subgroup,
                           std::ostream& out) {
  out << "d,r,N,power,mc_se,B_effective\n";
  for (const auto& row : table.rows) {
    if (row.metric != "power" || row.alpha != alpha || row.subgroup != subgroup) continue;
    out << io::fmt_g(row.d) << ',' << io::fmt_g(row.r) << ',' << row.n_subjects << ','
        << cell_or_empty(row.value) << ',' << cell_or_empty(row.mc_se) << ','
        << row.b_effective << '\n';
  }
}

void write_bias_coverage_csv(const MetricsTable& table, std::ostream& out) {
  out << "d,r,N,estimator,mean_bias,bias_mc_se,coverage,coverage_mc_se,B_effective\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& bias = table.rows[i];
    if (bias.metric != "mean_bias" || bias.mechanism != sim::Mechanism::Waning) continue;
    // The matching coverage row is emitted immediately after the bias row.
    const MetricRow* cover = nullptr;
    if (i + 1 < table.rows.size() && table.rows[i + 1].metric == "coverage" &&
        table.rows[i + 1].cell_id == bias.cell_id &&
        table.rows[i + 1].estimator == bias.estimator) {
      cover = &table.rows[i + 1];
    }
    out << io::fmt_g(bias.d) << ',' << io::fmt_g(bias.r) << ',' << bias.n_subjects << ','
        << estimator_name(bias.estimator) << ',' << cell_or_empty(bias.value) << ','
        << cell_or_empty(bias.mc_se) << ',' << (cover ? cell_or_empty(cover->value) : "")
        << ',' << (cover ? cell_or_empty(cover->mc_se) : "") << ',' << bias.b_effective
        << '\n';
  }
}

void write_strain_bias_csv(const MetricsTable& table, std::ostream& out) {
  out << "c,N,estimator,mean_bias,mc_se,B_effective\n";
  for (const auto& row : table.rows) {
    if (row.metric != "mean_bias" || row.mechanism != sim::Mechanism::NewStrain) continue;
    out << io::fmt_g(row.c) << ',' << row.n_subjects << ',' << estimator_name(row.estimator)
        << ',' << cell_or_empty(row.value) << ',' << cell_or_empty(row.mc_se) << ','
        << row.b_effective << '\n';
  }
}

void write_type1_csv(const MetricsTable& table, std::ostream& out) {
  out << "N,c,subgroup,alpha,type1,mc_se,B_effective\n";
  for (const auto& row : table.rows) {
    if (row.metric != "type1") continue;
    out << row.n_subjects << ',' << io::fmt_g(row.c) << ',' << (row.subgroup ? 1 : 0) << ','
        << io::fmt_g(row.alpha) << ',' << cell_or_empty(row.value) << ','
        << cell_or_empty(row.mc_se) << ',' << row.b_effective << '\n';
  }
}

}  // namespace vaxwane::mc
