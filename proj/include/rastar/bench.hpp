#pragma once

#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rastar/datagen.hpp"
#include "rastar/multi.hpp"
#include "rastar/region.hpp"
#include "rastar/search.hpp"

namespace rastar {

struct BenchSuite {
  std::vector<ScenarioSpec> scenarios;
  std::vector<int> target_counts{1, 3, 7, 10, 15, 20, 30, 40, 50};
  int repetitions = 1;
  std::vector<SourceKind> sources{SourceKind::kNull, SourceKind::kOracle};
  SearchConfig search{};
  TargetSamplerConfig sampler{};
  int oracle_radius = 5;
  std::filesystem::path mask_dir;  // for SourceKind::kFile
  // Extra rows per source with per-target plans run concurrently.
  bool throughput_rows = false;
  // Called after every plan_targets run, outside the timed region.
  std::function<void(const Scenario&, SourceKind, const MultiPlanReport&)> on_report;

  void validate() const;
};

struct BenchRow {
  std::string scenario;
  int targets = 0;
  std::string source;  // "null", "oracle", "file", or "<kind>-parallel"
  double plan_ms = 0.0;  // mean over repetitions of the summed plan time
  double plan_ms_median = 0.0;
  double predict_ms = 0.0;
  double predict_ms_median = 0.0;
  double expanded = 0.0;  // mean expansions per planned target
  int successes = 0;      // summed over repetitions
  int reps = 0;
};

class BenchError : public std::runtime_error {
 public:
  BenchError(const std::string& what, std::vector<BenchRow> completed)
      : std::runtime_error(what), completed_(std::move(completed)) {}
  const std::vector<BenchRow>& completed() const { return completed_; }

 private:
  std::vector<BenchRow> completed_;
};

/// One row per (scenario, target count, source). Rows run sequentially;
/// per-target plans inside a timing row run sequentially too.
std::vector<BenchRow> run_suite(const BenchSuite& suite);

inline constexpr const char* kBenchHeader = "targets,source,plan_ms,predict_ms,expanded,success,reps";
std::string bench_csv(const std::vector<BenchRow>& rows);

struct RatioRow {
  std::string scenario;
  int targets = 0;
  double plain_ms = 0.0;     // median, null source
  double improved_ms = 0.0;  // median, oracle or file source
  double ratio = 0.0;        // plain / improved
};

std::vector<RatioRow> paired_ratios(const std::vector<BenchRow>& rows);
std::string ratio_csv(const std::vector<RatioRow>& rows);
// Also includes medians and per-scenario ids that bench.csv leaves out.
std::string bench_detail_csv(const std::vector<BenchRow>& rows);

/// Cells ever popped by the search, projected over heading. Throws
/// std::logic_error if the plan ran without trace recording.
BitGrid dump_search_space(const PlanResult& result, int width, int height);

}  // namespace rastar
