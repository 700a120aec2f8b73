#include "vaxwane/pipeline/dated_export.hpp"

#include <cmath>
#include <ostream>

#include "vaxwane/error.hpp"

namespace vaxwane::pipeline {

namespace {

io::Date landmark_date(const sim::AnalyticCohort& cohort, io::Date start) {
  return start + std::chrono::days{static_cast<long>(std::llround(cohort.landmark_day))};
}

}  // namespace

void write_dated_cohort_csv(const sim::AnalyticCohort& cohort, io::Date vaccination_start,
                            std::ostream& out) {
  const io::Date landmark = landmark_date(cohort, vaccination_start);
  out << (cohort.has_subgroup ? "id,vaccination_date,event_date,x1\n"
                              : "id,vaccination_date,event_date\n");
  for (std::size_t i = 0; i < cohort.rows.size(); ++i) {
    const auto& r = cohort.rows[i];
    const long z_days = static_cast<long>(std::ceil(r.z_delta));
    const io::Date vax = landmark - std::chrono::days{z_days};
    out << 's' << (i + 1) << ',' << io::format_iso_date(vax) << ',';
    if (r.event == 1) {
      const long t_days = static_cast<long>(std::ceil(r.time));
      out << io::format_iso_date(landmark + std::chrono::days{t_days});
    }
    if (cohort.has_subgroup) out << ',' << r.x1;
    out << '\n';
  }
}

CohortSchema dated_cohort_schema(const sim::AnalyticCohort& cohort, io::Date vaccination_start) {
  CohortSchema schema;
  schema.id_column = "id";
  schema.vaccination_date_column = "vaccination_date";
  schema.event_date_column = "event_date";
  if (cohort.has_subgroup) {
    CovariateSpec x1;
    x1.name = "x1";
    x1.kind = CovariateKind::Binary;
    schema.covariates.push_back(std::move(x1));
  }
  schema.window.vaccination_start = vaccination_start;
  schema.window.landmark = landmark_date(cohort, vaccination_start);
  schema.window.censor =
      schema.window.landmark +
      std::chrono::days{static_cast<long>(std::llround(cohort.followup_days))};
  schema.sensitivity_cap_days = 90;
  return schema;
}

}  // namespace vaxwane::pipeline
