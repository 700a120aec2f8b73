#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "configs.hpp"
#include "manifest.hpp"
#include "vaxwane/error.hpp"
#include "vaxwane/io/csv.hpp"
#include "vaxwane/mc/harness.hpp"
#include "vaxwane/pipeline/analysis.hpp"
#include "vaxwane/pipeline/dated_export.hpp"
#include "vaxwane/pipeline/report.hpp"
#include "vaxwane/sim/cohort.hpp"

namespace fs = std::filesystem;

namespace vaxwane::cli {

namespace {

// Default calendar anchor for dated exports of simulated cohorts.
constexpr const char* kDefaultStartDate = "2021-01-01";

void load_report_notes(const pipeline::RawCohort& raw, RunManifest& manifest) {
  if (!raw.row_errors.empty()) {
    manifest.add_note(std::to_string(raw.row_errors.size()) + " row(s) rejected while parsing");
    const std::size_t cap = std::min<std::size_t>(raw.row_errors.size(), 20);
    for (std::size_t i = 0; i < cap; ++i) manifest.add_note(raw.row_errors[i]);
  }
}

void exclusion_notes(const pipeline::ExclusionReport& ex, RunManifest& manifest) {
  std::ostringstream note;
  note << "rows in=" << ex.input_rows << " included=" << ex.included
       << " excluded_window=" << ex.excluded_window
       << " excluded_pre_landmark_event=" << ex.excluded_pre_landmark_event
       << " rejected_invalid=" << ex.rejected_invalid;
  manifest.add_note(note.str());
}

}  // namespace

int cmd_simulate(const SimulateArgs& args) {
  const auto config_json = load_json_file(args.config_path);
  const auto config = parse_cohort_config(config_json);

  const auto cohort = sim::generate_cohort(config);

  RunManifest manifest("simulate", config_hash(config_json), config.seed);
  {
    auto out = open_output(args.out_path);
    sim::write_cohort_csv(cohort, out);
    if (!out) throw IoError("failed writing " + args.out_path);
  }
  manifest.add_output(args.out_path);
  manifest.add_note("truncated_count=" + std::to_string(cohort.truncated_count));

  if (!args.dated_dir.empty()) {
    const fs::path dir(args.dated_dir);
    const auto start = *io::parse_iso_date(kDefaultStartDate);
    const fs::path csv_path = dir / "cohort_dated.csv";
    {
      auto out = open_output(csv_path);
      pipeline::write_dated_cohort_csv(cohort, start, out);
    }
    const fs::path schema_path = dir / "schema.json";
    {
      auto out = open_output(schema_path);
      out << pipeline::dated_cohort_schema(cohort, start).to_json().dump(2) << '\n';
    }
    manifest.add_output(csv_path);
    manifest.add_output(schema_path);
  }

  manifest.write(fs::path(args.out_path).parent_path() / "simulate_manifest.json");
  return 0;
}

int cmd_experiment(const ExperimentArgs& args) {
  nlohmann::json config_json;
  mc::ExperimentConfig config;
  if (!args.config_path.empty()) {
    config_json = load_json_file(args.config_path);
    config = parse_experiment_config(config_json);
  } else if (args.paper_grid == "no_subgroup") {
    config = mc::default_paper_grid(mc::GridVariant::NoSubgroup);
    config_json = {{"paper_grid", args.paper_grid}};
  } else if (args.paper_grid == "with_subgroup") {
    config = mc::default_paper_grid(mc::GridVariant::WithSubgroup);
    config_json = {{"paper_grid", args.paper_grid}};
  } else {
    throw ConfigError("experiment needs --config or --paper-grid no_subgroup|with_subgroup");
  }
  if (args.desk_scale) {
    mc::apply_desk_scale(config);
    config_json["desk_scale"] = true;
  }
  if (args.workers > 0) config.workers = args.workers;
  config.validate();

  const fs::path dir(args.out_dir);
  RunManifest manifest("experiment", config_hash(config_json), config.base_seed);

  // Cells run one at a time and the tables are rewritten after each, so an
  // interrupted run still leaves consistent partial results. Replication
  // seeds depend only on (base_seed, cell, rep), never on cell order.
  mc::MetricsTable table;
  auto flush_outputs = [&]() {
    {
      auto out = open_output(dir / "metrics.csv");
      table.write_csv(out);
    }
    {
      auto out = open_output(dir / "metrics.json");
      out << table.to_json().dump(2) << '\n';
    }
    bool have_power_nosub = false, have_power_sub = false, have_bias_w = false,
         have_bias_s = false, have_type1 = false;
    for (const auto& row : table.rows) {
      if (row.metric == "power") (row.subgroup ? have_power_sub : have_power_nosub) = true;
      if (row.metric == "mean_bias") {
        (row.mechanism == sim::Mechanism::Waning ? have_bias_w : have_bias_s) = true;
      }
      if (row.metric == "type1") have_type1 = true;
    }
    if (have_power_nosub) {
      auto out = open_output(dir / "fig4_power.csv");
      mc::write_power_curve_csv(table, 0.05, false, out);
    }
    if (have_power_sub) {
      auto out = open_output(dir / "figS2_power.csv");
      mc::write_power_curve_csv(table, 0.05, true, out);
    }
    if (have_bias_w) {
      auto out = open_output(dir / "fig5_bias_coverage.csv");
      mc::write_bias_coverage_csv(table, out);
    }
    if (have_bias_s) {
      auto out = open_output(dir / "figS3_bias.csv");
      mc::write_strain_bias_csv(table, out);
    }
    if (have_type1) {
      auto out = open_output(dir / "tableS1_type1.csv");
      mc::write_type1_csv(table, out);
    }
  };

  for (const auto& cell : config.cells) {
    mc::ExperimentConfig single = config;
    single.cells = {cell};
    auto cell_table = mc::run_grid(single);
    for (auto& row : cell_table.rows) table.rows.push_back(std::move(row));
    flush_outputs();
  }

  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".csv" || entry.path().filename() == "metrics.json") {
      manifest.add_output(entry.path());
    }
  }
  manifest.add_note("cells=" + std::to_string(config.cells.size()) +
                    " B=" + std::to_string(config.replications));
  manifest.write(dir / "manifest.json");
  return 0;
}

namespace {

struct LoadedCohort {
  pipeline::CohortSchema schema;
  pipeline::RawCohort raw;
  pipeline::AnalysisDataset analysis;
};

LoadedCohort load_and_build(const std::string& cohort_path, const std::string& schema_path) {
  auto schema = pipeline::load_schema_file(schema_path);
  auto raw = pipeline::load_cohort(cohort_path, schema);
  auto analysis = pipeline::build_analysis_dataset(raw, schema.window);
  return {std::move(schema), std::move(raw), std::move(analysis)};
}

}  // namespace

int cmd_analyze(const AnalyzeArgs& args) {
  auto loaded = load_and_build(args.cohort_path, args.schema_path);
  const auto& dataset = loaded.analysis.data;
  if (dataset.n_events() == 0) {
    std::cerr << "no events after landmark\n";
    return 4;
  }

  const int cap = args.sensitivity_cap.value_or(loaded.schema.sensitivity_cap_days.value_or(90));
  const auto report = pipeline::mechanism_test(dataset, {}, cap);

  const fs::path dir(args.out_dir);
  RunManifest manifest("analyze", config_hash(loaded.schema.to_json()), 0);
  load_report_notes(loaded.raw, manifest);
  exclusion_notes(loaded.analysis.exclusions, manifest);

  const std::string text = pipeline::mechanism_report_text(report);
  std::cout << text;
  {
    auto out = open_output(dir / "mechanism_report.txt");
    out << text;
  }
  {
    auto out = open_output(dir / "mechanism_report.json");
    out << pipeline::mechanism_report_json(report).dump(2) << '\n';
  }
  manifest.add_output(dir / "mechanism_report.txt");
  manifest.add_output(dir / "mechanism_report.json");

  if (dataset.n_covariates() >= 2) {
    const auto rows = pipeline::dual_model_comparison(dataset);
    {
      auto out = open_output(dir / "dual_model.csv");
      pipeline::write_dual_model_csv(rows, out);
    }
    std::cout << '\n' << pipeline::dual_model_text(rows);
    manifest.add_output(dir / "dual_model.csv");
  } else {
    manifest.add_note("dual-model comparison skipped: no covariates besides z_delta");
  }

  manifest.write(dir / "manifest.json");
  return 0;
}

int cmd_km(const KmArgs& args) {
  if (args.time_zero != "landmark" && args.time_zero != "vaccination") {
    throw ConfigError("--time-zero must be landmark or vaccination");
  }
  auto loaded = load_and_build(args.cohort_path, args.schema_path);

  const surv::SurvivalDataset* dataset = &loaded.analysis.data;
  std::optional<surv::SurvivalDataset> reindexed;
  if (args.time_zero == "vaccination") {
    // Time measured from each subject's vaccination date with no delayed
    // entry: the misspecified-origin view.
    const int z_index = loaded.analysis.data.covariate_index("z_delta");
    std::vector<surv::SurvivalRow> rows;
    rows.reserve(loaded.analysis.data.n_rows());
    for (const auto& r : loaded.analysis.data.rows()) {
      surv::SurvivalRow copy = r;
      copy.time += r.covariates[static_cast<std::size_t>(z_index)];
      rows.push_back(std::move(copy));
    }
    reindexed.emplace(std::move(rows), loaded.analysis.data.covariate_names());
    dataset = &*reindexed;
  }

  const auto curves = pipeline::km_by_offset_bins(*dataset, args.bin_width);

  const fs::path dir(args.out_dir);
  RunManifest manifest("km", config_hash(loaded.schema.to_json()), 0);
  load_report_notes(loaded.raw, manifest);
  exclusion_notes(loaded.analysis.exclusions, manifest);
  {
    auto out = open_output(dir / "km_curves.csv");
    pipeline::write_km_curves_csv(curves, out);
  }
  manifest.add_output(dir / "km_curves.csv");
  manifest.add_note("time_zero=" + args.time_zero);
  manifest.add_note("strata=" + std::to_string(curves.size()));
  manifest.write(dir / "manifest.json");
  return 0;
}

}  // namespace vaxwane::cli
