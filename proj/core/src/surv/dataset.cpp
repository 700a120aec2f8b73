#include <cmath>
#include <sstream>

#include "vaxwane/error.hpp"
#include "vaxwane/io/csv.hpp"
#include "vaxwane/surv/types.hpp"

namespace vaxwane::surv {

SurvivalDataset::SurvivalDataset(std::vector<SurvivalRow> rows,
                                 std::vector<std::string> covariate_names)
    : rows_(std::move(rows)), covariate_names_(std::move(covariate_names)) {
  if (rows_.empty()) throw DataError("dataset has no rows");
  const std::size_t p = covariate_names_.size();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    if (!(r.entry_time >= 0.0) || !(r.time > r.entry_time)) {
      throw DataError("row " + std::to_string(i) +
                      ": requires time > entry_time >= 0");
    }
    if (r.event != 0 && r.event != 1) {
      throw DataError("row " + std::to_string(i) + ": event flag must be 0 or 1");
    }
    if (r.covariates.size() != p) {
      throw DataError("row " + std::to_string(i) + ": covariate length " +
                      std::to_string(r.covariates.size()) + " != " + std::to_string(p));
    }
    for (double x : r.covariates) {
      if (!std::isfinite(x)) {
        throw DataError("row " + std::to_string(i) + ": non-finite covariate");
      }
    }
    n_events_ += static_cast<std::size_t>(r.event);
    if (r.entry_time > 0.0) has_delayed_entry_ = true;
  }
}

int SurvivalDataset::covariate_index(std::string_view name) const {
  for (std::size_t j = 0; j < covariate_names_.size(); ++j) {
    if (covariate_names_[j] == name) return static_cast<int>(j);
  }
  return -1;
}

std::string_view ties_method_name(TiesMethod m) {
  return m == TiesMethod::Breslow ? "breslow" : "efron";
}

double StepFunction::operator()(double t) const {
  // Last jump at or before t.
  std::size_t lo = 0, hi = times.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (times[mid] <= t) lo = mid + 1;
    else hi = mid;
  }
  return lo == 0 ? 0.0 : values[lo - 1];
}

std::string format_matrix(const Eigen::MatrixXd& m) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << io::fmt_g(m(i, j), 12);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace vaxwane::surv
