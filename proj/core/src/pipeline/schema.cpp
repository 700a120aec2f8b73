#include "vaxwane/pipeline/schema.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "vaxwane/error.hpp"

namespace vaxwane::pipeline {

namespace {

io::Date parse_date_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw ConfigError(std::string("window requires an ISO date string '") + key + "'");
  }
  const auto text = j.at(key).get<std::string>();
  const auto d = io::parse_iso_date(text);
  if (!d) throw ConfigError("invalid ISO date for '" + std::string(key) + "': " + text);
  return *d;
}

CovariateKind kind_from_string(const std::string& s) {
  if (s == "binary") return CovariateKind::Binary;
  if (s == "categorical") return CovariateKind::Categorical;
  if (s == "continuous") return CovariateKind::Continuous;
  throw ConfigError("unknown covariate kind: " + s);
}

const char* kind_to_string(CovariateKind k) {
  switch (k) {
    case CovariateKind::Binary: return "binary";
    case CovariateKind::Categorical: return "categorical";
    case CovariateKind::Continuous: return "continuous";
  }
  return "binary";
}

}  // namespace

void AnalysisWindow::validate() const {
  if (!(vaccination_start < landmark && landmark < censor)) {
    throw ConfigError("window requires vaccination_start < landmark < censor");
  }
}

CohortSchema CohortSchema::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("schema must be a JSON object");
  CohortSchema s;
  try {
    if (j.contains("id_column")) s.id_column = j.at("id_column").get<std::string>();
    s.vaccination_date_column = j.at("vaccination_date_column").get<std::string>();
    s.event_date_column = j.at("event_date_column").get<std::string>();
    if (j.contains("covariates")) {
      for (const auto& cj : j.at("covariates")) {
        CovariateSpec spec;
        spec.name = cj.at("name").get<std::string>();
        spec.kind = kind_from_string(cj.at("kind").get<std::string>());
        if (spec.kind == CovariateKind::Categorical) {
          if (!cj.contains("reference")) {
            throw ConfigError("categorical covariate '" + spec.name + "' needs a reference level");
          }
          spec.reference = cj.at("reference").get<std::string>();
          if (cj.contains("levels")) {
            spec.levels = cj.at("levels").get<std::vector<std::string>>();
          }
        }
        s.covariates.push_back(std::move(spec));
      }
    }
    const auto& wj = j.at("window");
    s.window.vaccination_start = parse_date_field(wj, "vaccination_start");
    s.window.landmark = parse_date_field(wj, "landmark");
    s.window.censor = parse_date_field(wj, "censor");
    if (j.contains("sensitivity_cap_days")) {
      s.sensitivity_cap_days = j.at("sensitivity_cap_days").get<int>();
      if (*s.sensitivity_cap_days <= 0) {
        throw ConfigError("sensitivity_cap_days must be positive");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed schema JSON: ") + e.what());
  }
  s.window.validate();
  return s;
}

nlohmann::json CohortSchema::to_json() const {
  nlohmann::json covs = nlohmann::json::array();
  for (const auto& c : covariates) {
    nlohmann::json cj{{"name", c.name}, {"kind", kind_to_string(c.kind)}};
    if (c.kind == CovariateKind::Categorical) {
      cj["reference"] = c.reference;
      if (!c.levels.empty()) cj["levels"] = c.levels;
    }
    covs.push_back(std::move(cj));
  }
  nlohmann::json j{{"id_column", id_column},
                   {"vaccination_date_column", vaccination_date_column},
                   {"event_date_column", event_date_column},
                   {"covariates", covs},
                   {"window",
                    {{"vaccination_start", io::format_iso_date(window.vaccination_start)},
                     {"landmark", io::format_iso_date(window.landmark)},
                     {"censor", io::format_iso_date(window.censor)}}}};
  if (sensitivity_cap_days) j["sensitivity_cap_days"] = *sensitivity_cap_days;
  return j;
}

CohortSchema load_schema_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open schema file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("schema is not valid JSON: ") + e.what());
  }
  return CohortSchema::from_json(j);
}

}  // namespace vaxwane::pipeline
