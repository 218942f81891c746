#pragma once

#include <string>
#include <vector>

#include "rastar/actions.hpp"
#include "rastar/grid.hpp"
#include "rastar/region.hpp"
#include "rastar/search.hpp"

namespace rastar {

struct TargetSamplerConfig {
  int longitudinal_step = 25;                       // cells of arc length between stations
  std::vector<int> lateral_offsets{-10, -5, 0, 5, 10};  // cells, positive = left of travel
  int max_targets = 50;

  void validate() const;
};

/// Stations every longitudinal_step cells along the path (starting one step
/// from its origin); at each, the station shifted by every lateral offset
/// along the local left normal, rounded to a cell. Out-of-bounds and
/// occupied cells are dropped. Station-major, offset-minor order, truncated
/// to max_targets.
std::vector<Cell> sample_targets(const OccupancyGrid& grid, const ReferencePath& refpath,
                                 const TargetSamplerConfig& cfg);

struct TargetOutcome {
  Cell target;
  PlanResult result;
  SourceKind source = SourceKind::kNull;
  bool had_region = false;
  double predict_ms = 0.0;  // share of the batch prediction time
  double plan_ms = 0.0;
  std::string error;         // plan error; empty when the plan ran
  std::string region_error;  // mask could not be loaded; planned without one

  bool reached() const { return error.empty() && result.reached(); }
};

struct MultiPlanTotals {
  int targets = 0;
  int successes = 0;
  double plan_ms = 0.0;     // sum of per-target plan times
  double predict_ms = 0.0;  // one batch
  double wall_ms = 0.0;     // planning phase wall clock
  std::int64_t expanded = 0;
};

struct MultiPlanReport {
  std::vector<TargetOutcome> per_target;
  MultiPlanTotals totals;
};

struct MultiPlanOptions {
  bool parallel = false;
};

/// Samples targets, predicts one region per target as a single batch, then
/// plans each target with its region (weighted by scfg.w). Per-target
/// failures are recorded, never thrown.
MultiPlanReport plan_all(const OccupancyGrid& grid, const ReferencePath& refpath, Pose start,
                         double speed, const RegionSource& source, const SearchConfig& scfg,
                         const TargetSamplerConfig& tcfg, const ActionSet& actions,
                         MultiPlanOptions options = {});

/// Same, with targets supplied by the caller.
MultiPlanReport plan_targets(const OccupancyGrid& grid, std::span<const Cell> targets, Pose start,
                             double speed, const RegionSource& source, const SearchConfig& scfg,
                             const ActionSet& actions, MultiPlanOptions options = {});

}  // namespace rastar
