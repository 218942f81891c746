#include "rastar/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace rastar {

void BenchSuite::validate() const {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  for (std::size_t i = 1; i < target_counts.size(); ++i) {
    if (target_counts[i] <= target_counts[i - 1]) {
      throw std::invalid_argument("target_counts must be strictly increasing");
    }
  }
  if (!target_counts.empty() && target_counts.front() < 1) {
    throw std::invalid_argument("target counts must be >= 1");
  }
}

namespace {

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

RegionSource make_source(const BenchSuite& suite, SourceKind kind, const ScenarioSpec& spec) {
  switch (kind) {
    case SourceKind::kNull: return NullSource{};
    case SourceKind::kFile: return FileSource{suite.mask_dir, spec.id};
    case SourceKind::kOracle: {
      OracleSource oracle;
      oracle.radius = suite.oracle_radius;
      return oracle;
    }
  }
  return NullSource{};
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::vector<BenchRow> run_suite(const BenchSuite& suite) {
  suite.validate();
  const ActionSet actions = ActionSet::build();
  std::vector<BenchRow> rows;
  for (const ScenarioSpec& spec : suite.scenarios) {
    std::optional<Scenario> sc;
    try {
      sc.emplace(build_scenario(spec));
    } catch (const std::exception& e) {
      throw BenchError("scenario '" + spec.id + "': " + e.what(), rows);
    }
    // Build the successor table outside the timed rows.
    actions.turn_table(suite.search.speed_profile.angle_limit(sc->speed));
    for (int count : suite.target_counts) {
      TargetSamplerConfig tcfg = suite.sampler;
      tcfg.max_targets = count;
      const std::vector<Cell> targets = sample_targets(sc->inflated, sc->base_refpath, tcfg);
      for (int pass = 0; pass < (suite.throughput_rows ? 2 : 1); ++pass) {
        for (SourceKind kind : suite.sources) {
          const RegionSource source = make_source(suite, kind, spec);
          std::vector<double> plan_ms, predict_ms;
          double expanded = 0.0;
          int planned = 0;
          BenchRow row;
          row.scenario = spec.id;
          row.targets = count;
          row.source = std::string(to_string(kind)) + (pass == 1 ? "-parallel" : "");
          row.reps = suite.repetitions;
          for (int rep = 0; rep < suite.repetitions; ++rep) {
            const MultiPlanReport report =
                plan_targets(sc->inflated, targets, sc->start, sc->speed, source, suite.search,
                             actions, MultiPlanOptions{pass == 1});
            plan_ms.push_back(pass == 1 ? report.totals.wall_ms : report.totals.plan_ms);
            predict_ms.push_back(report.totals.predict_ms);
            expanded += static_cast<double>(report.totals.expanded);
            planned += report.totals.targets;
            row.successes += report.totals.successes;
            if (suite.on_report) suite.on_report(*sc, kind, report);
          }
          row.plan_ms = mean(plan_ms);
          row.plan_ms_median = median(plan_ms);
          row.predict_ms = mean(predict_ms);
          row.predict_ms_median = median(predict_ms);
          row.expanded = planned > 0 ? expanded / planned : 0.0;
          rows.push_back(row);
        }
      }
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << kBenchHeader << '\n';
  for (const BenchRow& r : rows) {
    out << r.targets << ',' << r.source << ',' << fmt(r.plan_ms) << ',' << fmt(r.predict_ms) << ','
        << fmt(r.expanded) << ',' << r.successes << ',' << r.reps << '\n';
  }
  return out.str();
}

std::string bench_detail_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "scenario,targets,source,plan_ms_mean,plan_ms_median,predict_ms_mean,predict_ms_median,"
         "expanded,success,reps\n";
  for (const BenchRow& r : rows) {
    out << r.scenario << ',' << r.targets << ',' << r.source << ',' << fmt(r.plan_ms) << ','
        << fmt(r.plan_ms_median) << ',' << fmt(r.predict_ms) << ',' << fmt(r.predict_ms_median)
        << ',' << fmt(r.expanded) << ',' << r.successes << ',' << r.reps << '\n';
  }
  return out.str();
}

std::vector<RatioRow> paired_ratios(const std::vector<BenchRow>& rows) {
  std::map<std::pair<std::string, int>, const BenchRow*> plain;
  for (const BenchRow& r : rows) {
    if (r.source == "null") plain[{r.scenario, r.targets}] = &r;
  }
  std::vector<RatioRow> out;
  for (const BenchRow& r : rows) {
    if (r.source != "oracle" && r.source != "file") continue;
    const auto it = plain.find({r.scenario, r.targets});
    if (it == plain.end()) continue;
    RatioRow q;
    q.scenario = r.scenario;
    q.targets = r.targets;
    q.plain_ms = it->second->plan_ms_median;
    q.improved_ms = r.plan_ms_median;
    q.ratio = q.improved_ms > 0.0 ? q.plain_ms / q.improved_ms : 0.0;
    out.push_back(q);
  }
  return out;
}

std::string ratio_csv(const std::vector<RatioRow>& rows) {
  std::ostringstream out;
  out << "scenario,targets,plain_ms,improved_ms,ratio\n";
  for (const RatioRow& r : rows) {
    out << r.scenario << ',' << r.targets << ',' << fmt(r.plain_ms) << ',' << fmt(r.improved_ms)
        << ',' << fmt(r.ratio) << '\n';
  }
  return out.str();
}

BitGrid dump_search_space(const PlanResult& result, int width, int height) {
  if (!result.traced) throw std::logic_error("plan ran without expansion tracing");
  BitGrid out(width, height);
  for (const StateKey& k : result.trace) out.set({k.col, k.row});
  return out;
}

}  // namespace rastar
