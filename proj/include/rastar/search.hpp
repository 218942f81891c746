#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rastar/actions.hpp"
#include "rastar/grid.hpp"

namespace rastar {

enum class TieBreak {
  kLowerHThenFifo,  // equal f: lower h first, then insertion order
};

struct SearchConfig {
  // Multiplier applied to step cost and heuristic for children landing in the
  // region mask. Ignored when no mask is supplied.
  double w = 0.15;
  double delta_ang_weight = 3.0;  // cells per radian of heading change
  int theta_bins = 72;
  double time_limit_ms = 100.0;
  double goal_tolerance = 1.0;  // cells, heading unconstrained
  TieBreak tie_break = TieBreak::kLowerHThenFifo;
  SpeedProfile speed_profile = SpeedProfile::default_profile();
  bool record_trace = false;

  void validate() const;
};

enum class PlanStatus { kReached, kTimeout, kExhausted };
const char* to_string(PlanStatus status);

struct SearchStats {
  std::int64_t expanded = 0;
  std::int64_t pushed = 0;
  double elapsed_ms = 0.0;
  std::int64_t region_hits = 0;
};

// Closed-set key: the heading is bucketed, position is exact.
struct StateKey {
  int col = 0;
  int row = 0;
  int theta_bin = 0;

  friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct SearchNode {
  int col = 0;
  int row = 0;
  int theta_bin = 0;
  double heading = 0.0;
  double g = 0.0;
  double h = 0.0;
  double f = 0.0;
  std::int32_t parent = -1;
};

struct PlanResult {
  PlanStatus status = PlanStatus::kExhausted;
  std::vector<Pose> path;  // empty unless reached
  SearchStats stats;
  // Unweighted cost of the path (length + delta_ang_weight * turn).
  double cost = 0.0;
  // Popped states in order; filled only with SearchConfig::record_trace.
  std::vector<StateKey> trace;
  bool traced = false;

  bool reached() const { return status == PlanStatus::kReached; }
};

enum class PlanErrc { kStartOutOfBounds, kTargetOutOfBounds, kStartOccupied, kTargetOccupied };

class PlanError : public std::runtime_error {
 public:
  PlanError(PlanErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  PlanErrc code() const { return code_; }

 private:
  PlanErrc code_;
};

int theta_bin(double heading, int bins);

/// Lookup-table A*. With a region mask, children whose cell lies in the mask
/// get their step cost and heuristic scaled by cfg.w; without one this is the
/// plain planner. `grid` is expected to be inflated already.
PlanResult plan(const OccupancyGrid& grid, Pose start, Cell target, double speed,
                const RegionMask* region, const SearchConfig& cfg, const ActionSet& actions);

/// Root-first poses along the parent chain ending at `terminal`.
std::vector<Pose> backtrack(std::span<const SearchNode> nodes, std::size_t terminal);

/// Step cost between consecutive poses under cfg, without region scaling.
double step_cost(const Pose& from, const Pose& to, const SearchConfig& cfg);
double path_cost(std::span<const Pose> path, const SearchConfig& cfg);

}  // namespace rastar
