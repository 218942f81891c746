#include "rastar/multi.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace rastar {

void TargetSamplerConfig::validate() const {
  if (longitudinal_step < 1) throw std::invalid_argument("longitudinal_step must be >= 1");
  if (max_targets < 1) throw std::invalid_argument("max_targets must be >= 1");
  for (std::size_t i = 1; i < lateral_offsets.size(); ++i) {
    if (lateral_offsets[i] <= lateral_offsets[i - 1]) {
      throw std::invalid_argument("lateral_offsets must be sorted and unique");
    }
  }
}

std::vector<Cell> sample_targets(const OccupancyGrid& grid, const ReferencePath& refpath,
                                 const TargetSamplerConfig& cfg) {
  cfg.validate();
  std::vector<Cell> out;
  const auto cap = static_cast<std::size_t>(cfg.max_targets);
  for (double s = cfg.longitudinal_step; s <= refpath.length() + 1e-9 && out.size() < cap;
       s += cfg.longitudinal_step) {
    const Station st = refpath.station_at(s);
    const double left_col = -std::sin(st.heading);
    const double left_row = -std::cos(st.heading);
    for (int off : cfg.lateral_offsets) {
      const Cell c{static_cast<int>(std::lround(st.col + off * left_col)),
                   static_cast<int>(std::lround(st.row + off * left_row))};
      if (!grid.in_bounds(c) || grid.occupied(c)) continue;
      out.push_back(c);
      if (out.size() == cap) break;
    }
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

MultiPlanReport plan_targets(const OccupancyGrid& grid, std::span<const Cell> targets, Pose start,
                             double speed, const RegionSource& source, const SearchConfig& scfg,
                             const ActionSet& actions, MultiPlanOptions options) {
  if (!grid.in_bounds(start.cell)) throw PlanError(PlanErrc::kStartOutOfBounds, "start out of bounds");
  if (grid.occupied(start.cell)) throw PlanError(PlanErrc::kStartOccupied, "start cell is occupied");
  MultiPlanReport report;
  const SourceKind kind = kind_of(source);
  const PlanContext ctx{grid, start, speed, actions};

  // Phase 1: all regions as one batch.
  const auto t_predict = Clock::now();
  const std::vector<RegionPrediction> regions = predict_batch(source, ctx, targets, options.parallel);
  const double predict_ms = ms_since(t_predict);

  // Phase 2: one plan per (target, region).
  report.per_target.resize(targets.size());
  const double share = targets.empty() ? 0.0 : predict_ms / static_cast<double>(targets.size());
  const auto n = static_cast<std::ptrdiff_t>(targets.size());
  const auto t_plan = Clock::now();
#pragma omp parallel for schedule(dynamic, 1) if (options.parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    TargetOutcome& out = report.per_target[k];
    out.target = targets[k];
    out.source = kind;
    out.predict_ms = share;
    out.region_error = regions[k].error;
    const RegionMask* mask = regions[k].mask ? &*regions[k].mask : nullptr;
    out.had_region = mask != nullptr;
    const auto t0 = Clock::now();
    try {
      out.result = plan(grid, start, targets[k], speed, mask, scfg, actions);
    } catch (const std::exception& e) {
      out.error = e.what();
      out.result = PlanResult{};
    }
    out.plan_ms = ms_since(t0);
  }
  report.totals.wall_ms = ms_since(t_plan);

  report.totals.targets = static_cast<int>(targets.size());
  report.totals.predict_ms = predict_ms;
  for (const TargetOutcome& o : report.per_target) {
    if (o.result.reached()) ++report.totals.successes;
    report.totals.plan_ms += o.plan_ms;
    report.totals.expanded += o.result.stats.expanded;
  }
  return report;
}

MultiPlanReport plan_all(const OccupancyGrid& grid, const ReferencePath& refpath, Pose start,
                         double speed, const RegionSource& source, const SearchConfig& scfg,
                         const TargetSamplerConfig& tcfg, const ActionSet& actions,
                         MultiPlanOptions options) {
  const std::vector<Cell> targets = sample_targets(grid, refpath, tcfg);
  return plan_targets(grid, targets, start, speed, source, scfg, actions, options);
}

}  // namespace rastar
