// regionplan: command-line front end for the region-aided planner.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rastar/actions.hpp"
#include "rastar/bench.hpp"
#include "rastar/datagen.hpp"
#include "rastar/multi.hpp"
#include "rastar/raster_io.hpp"
#include "rastar/region.hpp"
#include "rastar/scenario_file.hpp"
#include "rastar/search.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace rastar;

namespace {

// Options shared by every subcommand that builds a scenario.
struct ScenarioOpts {
  std::string file;
  std::optional<std::uint64_t> seed;
  std::string layout;
  std::string id;

  void add(CLI::App* app) {
    app->add_option("--scenario", file, "Scenario file (key=value); defaults apply when omitted");
    app->add_option("--seed", seed, "Override the scenario seed");
    app->add_option("--layout", layout, "Override the layout: corridor, s-curve or lot");
    app->add_option("--id", id, "Override the scenario id");
  }

  ScenarioSpec spec() const {
    ScenarioSpec s = file.empty() ? ScenarioSpec{} : read_scenario_file(file);
    if (seed) s.seed = *seed;
    if (!layout.empty()) s.layout = parse_layout(layout);
    if (!id.empty()) s.id = id;
    s.validate();
    return s;
  }
};

struct SearchOpts {
  double w = 0.15;
  double time_limit = 100.0;
  double turn_weight = 3.0;
  int theta_bins = 72;
  std::optional<double> speed;

  void add(CLI::App* app) {
    app->add_option("--w", w, "Weight inside the region")->check(CLI::Range(1e-9, 1.0));
    app->add_option("--time-limit", time_limit, "Per-target time limit, ms")->check(CLI::PositiveNumber);
    app->add_option("--turn-weight", turn_weight, "Cost per radian of heading change");
    app->add_option("--theta-bins", theta_bins, "Heading bins");
    app->add_option("--speed", speed, "Override the scenario speed, m/s");
  }

  SearchConfig config() const {
    SearchConfig c;
    c.w = w;
    c.time_limit_ms = time_limit;
    c.delta_ang_weight = turn_weight;
    c.theta_bins = theta_bins;
    c.validate();
    return c;
  }
};

struct SamplerOpts {
  int step = 25;
  int max_targets = 50;
  std::vector<int> offsets{-10, -5, 0, 5, 10};

  void add(CLI::App* app) {
    app->add_option("--step", step, "Cells between target stations");
    app->add_option("--max-targets", max_targets, "Target cap");
    app->add_option("--offsets", offsets, "Lateral offsets, cells")->delimiter(',');
  }

  TargetSamplerConfig config() const {
    TargetSamplerConfig c;
    c.longitudinal_step = step;
    c.max_targets = max_targets;
    c.lateral_offsets = offsets;
    c.validate();
    return c;
  }
};

struct SourceOpts {
  std::string kind = "null";
  std::string mask_dir;
  int radius = 5;

  void add(CLI::App* app) {
    app->add_option("--source", kind, "Region source: null, oracle or file");
    app->add_option("--mask-dir", mask_dir, "Directory of mask_{id}_{index}.pgm files");
    app->add_option("--radius", radius, "Oracle dilation radius, cells");
  }

  RegionSource source(const std::string& scenario_id) const {
    switch (parse_source_kind(kind)) {
      case SourceKind::kNull: return NullSource{};
      case SourceKind::kFile:
        if (mask_dir.empty()) throw std::invalid_argument("--source file needs --mask-dir");
        return FileSource{mask_dir, scenario_id};
      case SourceKind::kOracle: {
        OracleSource o;
        o.radius = radius;
        return o;
      }
    }
    return NullSource{};
  }
};

json path_json(const std::vector<Pose>& path) {
  json out = json::array();
  for (const Pose& p : path) out.push_back({p.cell.col, p.cell.row, p.heading});
  return out;
}

json result_json(const PlanResult& r) {
  return {{"status", to_string(r.status)},
          {"cost", r.cost},
          {"expanded", r.stats.expanded},
          {"pushed", r.stats.pushed},
          {"region_hits", r.stats.region_hits},
          {"elapsed_ms", r.stats.elapsed_ms},
          {"path", path_json(r.path)}};
}

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    write_file_bytes(out, j.dump(2) + "\n");
  }
}

Cell parse_cell(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("expected COL,ROW: " + text);
  return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

std::vector<int> parse_counts(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Region-aided lookup-table A* planner"};
  app.require_subcommand(1);

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "Plan to one target");
  ScenarioOpts plan_sc;
  SearchOpts plan_search;
  SourceOpts plan_src;
  std::string plan_target;
  int plan_index = 0;
  std::string plan_out;
  std::string plan_space;
  std::string plan_actions = "coprime";
  plan_sc.add(plan_cmd);
  plan_search.add(plan_cmd);
  plan_src.add(plan_cmd);
  plan_cmd->add_option("--target", plan_target, "Target cell COL,ROW")->required();
  plan_cmd->add_option("--index", plan_index, "Target index, for file masks");
  plan_cmd->add_option("--out", plan_out, "JSON output file (default stdout)");
  plan_cmd->add_option("--dump-space", plan_space, "Write the popped cells as a PGM");
  plan_cmd->add_option("--actions", plan_actions, "Action table: coprime or all-offsets");

  // plan-multi
  auto* multi_cmd = app.add_subcommand("plan-multi", "Sample targets and plan to each");
  ScenarioOpts multi_sc;
  SearchOpts multi_search;
  SourceOpts multi_src;
  SamplerOpts multi_sampler;
  bool multi_parallel = false;
  std::string multi_out;
  bool multi_paths = false;
  multi_sc.add(multi_cmd);
  multi_search.add(multi_cmd);
  multi_src.add(multi_cmd);
  multi_sampler.add(multi_cmd);
  multi_cmd->add_flag("--parallel", multi_parallel, "Plan targets concurrently");
  multi_cmd->add_flag("--paths", multi_paths, "Include paths in the output");
  multi_cmd->add_option("--out", multi_out, "JSON output file (default stdout)");

  // gen-samples
  auto* gen_cmd = app.add_subcommand("gen-samples", "Write predictor training samples");
  ScenarioOpts gen_sc;
  SamplerOpts gen_sampler;
  std::string gen_dir;
  int gen_per_target = 5;
  int gen_radius = 5;
  bool gen_serial = false;
  gen_sc.add(gen_cmd);
  gen_sampler.add(gen_cmd);
  gen_cmd->add_option("--out", gen_dir, "Output directory")->required();
  gen_cmd->add_option("--per-target", gen_per_target, "Augmented variants per target");
  gen_cmd->add_option("--label-radius", gen_radius, "Label dilation radius, cells");
  gen_cmd->add_flag("--serial", gen_serial, "Generate on one thread");

  // oracle-region
  auto* oracle_cmd = app.add_subcommand("oracle-region", "Write oracle masks in the file-source layout");
  ScenarioOpts oracle_sc;
  SamplerOpts oracle_sampler;
  std::string oracle_dir;
  int oracle_radius = 5;
  oracle_sc.add(oracle_cmd);
  oracle_sampler.add(oracle_cmd);
  oracle_cmd->add_option("--out", oracle_dir, "Output directory")->required();
  oracle_cmd->add_option("--radius", oracle_radius, "Dilation radius, cells");

  // dump-actions
  auto* actions_cmd = app.add_subcommand("dump-actions", "Print the action table as CSV");
  std::string actions_mode = "coprime";
  std::string actions_out;
  actions_cmd->add_option("--mode", actions_mode, "coprime or all-offsets");
  actions_cmd->add_option("--out", actions_out, "Output file (default stdout)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run a timing suite and write CSVs");
  std::vector<std::string> bench_files;
  int bench_generate = 0;
  std::string bench_template;
  std::uint64_t bench_base_seed = 1;
  bool bench_fixed_layout = false;
  std::string bench_counts = "1,3,7,10,15,20,30,40,50";
  int bench_reps = 1;
  std::vector<std::string> bench_sources{"null", "oracle"};
  std::string bench_mask_dir;
  bool bench_throughput = false;
  std::string bench_dir = ".";
  SearchOpts bench_search;
  SamplerOpts bench_sampler;
  bench_cmd->add_option("--scenario", bench_files, "Scenario file; repeatable");
  bench_cmd->add_option("--generate", bench_generate, "Add N scenarios from --template");
  bench_cmd->add_option("--template", bench_template, "Scenario file used by --generate");
  bench_cmd->add_option("--base-seed", bench_base_seed, "Seed of the first generated scenario");
  bench_cmd->add_flag("--fixed-layout", bench_fixed_layout, "Keep the template layout instead of cycling");
  bench_cmd->add_option("--counts", bench_counts, "Target counts, comma separated");
  bench_cmd->add_option("--reps", bench_reps, "Repetitions per row");
  bench_cmd->add_option("--sources", bench_sources, "Sources under test")->delimiter(',');
  bench_cmd->add_option("--mask-dir", bench_mask_dir, "Directory for the file source");
  bench_cmd->add_flag("--throughput", bench_throughput, "Add parallel throughput rows");
  bench_cmd->add_option("--out", bench_dir, "Output directory");
  bench_search.add(bench_cmd);
  bench_sampler.add(bench_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*plan_cmd) {
      const ScenarioSpec spec = plan_sc.spec();
      const Scenario sc = build_scenario(spec);
      SearchConfig cfg = plan_search.config();
      cfg.record_trace = !plan_space.empty();
      const double speed = plan_search.speed.value_or(sc.speed);
      const ActionSet actions = ActionSet::build(parse_action_mode(plan_actions));
      const Cell target = parse_cell(plan_target);
      const PlanContext ctx{sc.inflated, sc.start, speed, actions};
      const std::vector<Cell> targets{target};
      const RegionSource source = plan_src.source(spec.id);
      std::optional<RegionPrediction> pred;
      if (const auto* file = std::get_if<FileSource>(&source)) {
        // A single target still reads the mask for its batch index.
        RegionPrediction p;
        try {
          p.mask = read_pgm(fs::path(file->directory) / mask_filename(spec.id, static_cast<std::size_t>(plan_index)),
                            sc.inflated.width(), sc.inflated.height());
        } catch (const RasterError& e) {
          p.error = e.what();
        }
        pred = std::move(p);
      } else {
        pred = std::move(predict_batch(source, ctx, targets, false).front());
      }
      const RegionMask* mask = pred->mask ? &*pred->mask : nullptr;
      const PlanResult r = plan(sc.inflated, sc.start, target, speed, mask, cfg, actions);
      json j = result_json(r);
      j["scenario"] = spec.id;
      j["target"] = {target.col, target.row};
      j["source"] = plan_src.kind;
      j["had_region"] = mask != nullptr;
      if (!pred->error.empty()) j["region_error"] = pred->error;
      if (!plan_space.empty()) write_pgm(dump_search_space(r, sc.inflated.width(), sc.inflated.height()), plan_space);
      emit(j, plan_out);
      return r.reached() ? 0 : 2;
    }

    if (*multi_cmd) {
      const ScenarioSpec spec = multi_sc.spec();
      const Scenario sc = build_scenario(spec);
      const double speed = multi_search.speed.value_or(sc.speed);
      const ActionSet actions = ActionSet::build();
      const MultiPlanReport rep =
          plan_all(sc.inflated, sc.base_refpath, sc.start, speed, multi_src.source(spec.id),
                   multi_search.config(), multi_sampler.config(), actions, {multi_parallel});
      json targets = json::array();
      for (const TargetOutcome& o : rep.per_target) {
        json t = {{"target", {o.target.col, o.target.row}},
                  {"status", o.error.empty() ? to_string(o.result.status) : "error"},
                  {"had_region", o.had_region},
                  {"plan_ms", o.plan_ms},
                  {"expanded", o.result.stats.expanded},
                  {"cost", o.result.cost}};
        if (!o.error.empty()) t["error"] = o.error;
        if (!o.region_error.empty()) t["region_error"] = o.region_error;
        if (multi_paths) t["path"] = path_json(o.result.path);
        targets.push_back(std::move(t));
      }
      const json j = {{"scenario", spec.id},
                      {"source", multi_src.kind},
                      {"targets", targets},
                      {"totals",
                       {{"targets", rep.totals.targets},
                        {"successes", rep.totals.successes},
                        {"plan_ms", rep.totals.plan_ms},
                        {"predict_ms", rep.totals.predict_ms},
                        {"wall_ms", rep.totals.wall_ms},
                        {"expanded", rep.totals.expanded}}}};
      emit(j, multi_out);
      return 0;
    }

    if (*gen_cmd) {
      SampleGenConfig cfg;
      cfg.sampler = gen_sampler.config();
      cfg.per_target = gen_per_target;
      cfg.label_radius = gen_radius;
      cfg.parallel = !gen_serial;
      const Manifest m = generate_samples(gen_sc.spec(), cfg, gen_dir);
      std::printf("targets %d samples %zu skipped %d\n", m.targets, m.rows.size(), m.skipped);
      return 0;
    }

    if (*oracle_cmd) {
      const ScenarioSpec spec = oracle_sc.spec();
      const Scenario sc = build_scenario(spec);
      const ActionSet actions = ActionSet::build();
      const std::vector<Cell> targets = sample_targets(sc.inflated, sc.base_refpath, oracle_sampler.config());
      OracleSource oracle;
      oracle.radius = oracle_radius;
      const auto preds = predict_batch(oracle, {sc.inflated, sc.start, sc.speed, actions}, targets);
      fs::create_directories(oracle_dir);
      std::ostringstream index;
      index << "index,target_col,target_row,mask\n";
      for (std::size_t i = 0; i < targets.size(); ++i) {
        std::string name;
        if (preds[i].mask) {
          name = mask_filename(spec.id, i);
          write_pgm(*preds[i].mask, fs::path(oracle_dir) / name);
        }
        index << i << ',' << targets[i].col << ',' << targets[i].row << ',' << name << '\n';
      }
      write_file_bytes(fs::path(oracle_dir) / ("targets_" + spec.id + ".csv"), index.str());
      std::printf("targets %zu\n", targets.size());
      return 0;
    }

    if (*actions_cmd) {
      const std::string csv = ActionSet::build(parse_action_mode(actions_mode)).to_csv();
      if (actions_out.empty() || actions_out == "-") {
        std::cout << csv;
      } else {
        write_file_bytes(actions_out, csv);
      }
      return 0;
    }

    if (*bench_cmd) {
      BenchSuite suite;
      for (const std::string& f : bench_files) suite.scenarios.push_back(read_scenario_file(f));
      if (bench_generate > 0) {
        const ScenarioSpec base = bench_template.empty() ? ScenarioSpec{} : read_scenario_file(bench_template);
        for (int i = 0; i < bench_generate; ++i) {
          ScenarioSpec s = base;
          s.seed = bench_base_seed + static_cast<std::uint64_t>(i);
          s.id = base.id + "_" + std::to_string(i);
          if (!bench_fixed_layout) s.layout = static_cast<Layout>(i % 3);
          suite.scenarios.push_back(s);
        }
      }
      if (suite.scenarios.empty()) throw std::invalid_argument("bench needs --scenario or --generate");
      suite.target_counts = parse_counts(bench_counts);
      suite.repetitions = bench_reps;
      suite.sources.clear();
      for (const std::string& s : bench_sources) suite.sources.push_back(parse_source_kind(s));
      suite.mask_dir = bench_mask_dir;
      suite.throughput_rows = bench_throughput;
      suite.search = bench_search.config();
      suite.sampler = bench_sampler.config();

      std::vector<BenchRow> rows;
      int status = 0;
      try {
        rows = run_suite(suite);
      } catch (const BenchError& e) {
        std::cerr << "bench aborted: " << e.what() << " (" << e.completed().size() << " rows done)\n";
        rows = e.completed();
        status = 1;
      }
      fs::create_directories(bench_dir);
      write_file_bytes(fs::path(bench_dir) / "bench.csv", bench_csv(rows));
      write_file_bytes(fs::path(bench_dir) / "bench_ratio.csv", ratio_csv(paired_ratios(rows)));
      write_file_bytes(fs::path(bench_dir) / "bench_detail.csv", bench_detail_csv(rows));
      std::printf("rows %zu\n", rows.size());
      return status;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
