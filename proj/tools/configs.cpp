#include "configs.hpp"

#include <fstream>

#include "vaxwane/error.hpp"
#include "vaxwane/io/csv.hpp"

namespace vaxwane::cli {

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
}

namespace {

sim::HazardSpec parse_hazard(const nlohmann::json& j, double default_strain_day) {
  if (!j.is_object() || !j.contains("mechanism")) {
    throw ConfigError("hazard requires a 'mechanism' field");
  }
  const auto mech = j.at("mechanism").get<std::string>();
  if (mech == "waning") {
    return sim::HazardSpec::waning(j.at("a").get<double>(), j.at("b").get<double>(),
                                   j.at("d").get<double>(), j.at("r").get<double>());
  }
  if (mech == "new_strain") {
    const double strain_day =
        j.contains("strain_day") ? j.at("strain_day").get<double>() : default_strain_day;
    return sim::HazardSpec::new_strain(j.at("k").get<double>(), j.at("c").get<double>(),
                                       strain_day);
  }
  throw ConfigError("unknown mechanism '" + mech + "' (expected waning or new_strain)");
}

sim::SubgroupConfig parse_subgroup(const nlohmann::json& j) {
  sim::SubgroupConfig s;
  if (j.contains("subgroup")) {
    const auto& sj = j.at("subgroup");
    if (sj.contains("enabled")) s.enabled = sj.at("enabled").get<bool>();
    if (sj.contains("beta1")) s.beta1 = sj.at("beta1").get<double>();
    if (sj.contains("fraction")) s.fraction = sj.at("fraction").get<double>();
  }
  return s;
}

}  // namespace

sim::CohortConfig parse_cohort_config(const nlohmann::json& j) {
  try {
    sim::CohortConfig c;
    c.n_subjects = j.at("n_subjects").get<long>();
    if (j.contains("vaccination_window_days")) {
      c.vaccination_window_days = j.at("vaccination_window_days").get<double>();
    }
    if (j.contains("followup_days")) c.followup_days = j.at("followup_days").get<double>();
    c.subgroup = parse_subgroup(j);
    c.hazard = parse_hazard(j.at("hazard"), c.vaccination_window_days);
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("pool_chunk_factor")) {
      c.pool_chunk_factor = j.at("pool_chunk_factor").get<int>();
    }
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid cohort config: " + std::string(e.what()));
  }
}

mc::ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  try {
    mc::ExperimentConfig config;
    if (j.contains("B")) config.replications = j.at("B").get<int>();
    if (j.contains("base_seed")) config.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("alphas")) config.alphas = j.at("alphas").get<std::vector<double>>();
    if (j.contains("workers")) config.workers = j.at("workers").get<int>();
    if (j.contains("estimators")) {
      config.estimators.clear();
      for (const auto& name : j.at("estimators")) {
        const auto kind = mc::estimator_from_name(name.get<std::string>());
        if (!kind) throw ConfigError("unknown estimator: " + name.get<std::string>());
        config.estimators.push_back(*kind);
      }
    }
    if (!j.contains("cells")) throw ConfigError("experiment config requires 'cells'");
    for (const auto& cj : j.at("cells")) {
      mc::CellConfig cell;
      cell.n_subjects = cj.at("n").get<long>();
      if (cj.contains("vaccination_window_days")) {
        cell.vaccination_window_days = cj.at("vaccination_window_days").get<double>();
      }
      if (cj.contains("followup_days")) {
        cell.followup_days = cj.at("followup_days").get<double>();
      }
      cell.subgroup = parse_subgroup(cj);
      cell.hazard = parse_hazard(cj, cell.vaccination_window_days);
      config.cells.push_back(cell);
    }
    config.validate();
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid experiment config: " + std::string(e.what()));
  }
}

std::string config_hash(const nlohmann::json& j) {
  return io::to_hex(io::fnv1a64(j.dump()));
}

}  // namespace vaxwane::cli
