// vaxwane: survival-analysis toolkit for separating waning-immunity from
// new-strain mechanisms behind breakthrough infections.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "commands.hpp"
#include "vaxwane/error.hpp"
#include "vaxwane/version.hpp"

namespace {

int worker_env_default() {
  if (const char* env = std::getenv("VAXWANE_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace vaxwane;

  CLI::App app{"vaxwane: mechanism tests for breakthrough infections"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  cli::SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Generate one analytic cohort CSV");
  sim->add_option("--config", sim_args.config_path, "Cohort config JSON")->required();
  sim->add_option("--out", sim_args.out_path, "Output cohort CSV path")->required();
  sim->add_option("--dated-dir", sim_args.dated_dir,
                  "Also write a dated raw-cohort CSV and schema JSON into this directory");

  cli::ExperimentArgs exp_args;
  exp_args.workers = worker_env_default();
  auto* exp = app.add_subcommand("experiment", "Run a replicated simulation grid");
  exp->add_option("--config", exp_args.config_path, "Experiment config JSON");
  exp->add_option("--paper-grid", exp_args.paper_grid,
                  "Built-in grid preset: no_subgroup or with_subgroup");
  exp->add_flag("--desk-scale", exp_args.desk_scale, "Cap B at 500 and N at 10000");
  exp->add_option("--out", exp_args.out_dir, "Output directory")->required();
  exp->add_option("--workers", exp_args.workers,
                  "Worker thread hint (never changes results)");

  cli::AnalyzeArgs ana_args;
  int cap = -1;
  auto* ana = app.add_subcommand("analyze", "Mechanism test on a raw cohort CSV");
  ana->add_option("--cohort", ana_args.cohort_path, "Cohort CSV")->required();
  ana->add_option("--schema", ana_args.schema_path, "Schema + window JSON")->required();
  ana->add_option("--sensitivity-cap", cap, "z_delta cap (days) for the sensitivity refit");
  ana->add_option("--out", ana_args.out_dir, "Output directory")->required();

  cli::KmArgs km_args;
  auto* km = app.add_subcommand("km", "Kaplan-Meier curves stratified by vaccination offset");
  km->add_option("--cohort", km_args.cohort_path, "Cohort CSV")->required();
  km->add_option("--schema", km_args.schema_path, "Schema + window JSON")->required();
  km->add_option("--bin-width", km_args.bin_width, "Offset bin width in days (default 30)");
  km->add_option("--time-zero", km_args.time_zero, "landmark (default) or vaccination");
  km->add_option("--out", km_args.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  try {
    if (*sim) return cli::cmd_simulate(sim_args);
    if (*exp) return cli::cmd_experiment(exp_args);
    if (*ana) {
      if (cap > 0) ana_args.sensitivity_cap = cap;
      return cli::cmd_analyze(ana_args);
    }
    if (*km) return cli::cmd_km(km_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
