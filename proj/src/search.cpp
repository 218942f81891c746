#include "rastar/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <queue>

namespace rastar {

void SearchConfig::validate() const {
  if (!(w > 0.0 && w <= 1.0)) throw std::invalid_argument("w must lie in (0, 1]");
  if (!(delta_ang_weight >= 0.0)) throw std::invalid_argument("delta_ang_weight must be >= 0");
  if (theta_bins < 8) throw std::invalid_argument("theta_bins must be >= 8");
  if (!(time_limit_ms > 0.0)) throw std::invalid_argument("time_limit must be > 0");
  if (!(goal_tolerance >= 0.0)) throw std::invalid_argument("goal_tolerance must be >= 0");
}

const char* to_string(PlanStatus status) {
  switch (status) {
    case PlanStatus::kReached: return "reached";
    case PlanStatus::kTimeout: return "timeout";
    case PlanStatus::kExhausted: return "exhausted";
  }
  return "unknown";
}

int theta_bin(double heading, int bins) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(heading, two_pi);
  if (a < 0.0) a += two_pi;
  const int b = static_cast<int>(a / two_pi * bins);
  return b >= bins ? bins - 1 : b;
}

double step_cost(const Pose& from, const Pose& to, const SearchConfig& cfg) {
  return cell_distance(from.cell, to.cell) +
         cfg.delta_ang_weight * angular_distance(from.heading, to.heading);
}

double path_cost(std::span<const Pose> path, const SearchConfig& cfg) {
  double total = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) total += step_cost(path[i - 1], path[i], cfg);
  return total;
}

std::vector<Pose> backtrack(std::span<const SearchNode> nodes, std::size_t terminal) {
  std::vector<Pose> out;
  std::int64_t idx = static_cast<std::int64_t>(terminal);
  while (idx >= 0) {
    if (out.size() > nodes.size()) throw std::logic_error("cycle in search parent chain");
    const SearchNode& n = nodes[static_cast<std::size_t>(idx)];
    out.push_back(Pose{{n.col, n.row}, n.heading});
    idx = n.parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

// f and h are compared on a fixed grid so that mathematically equal sums
// tie exactly whatever order their terms were added in.
constexpr double kKeyQuantum = 1e-6;
// A new route only reopens a state when it is cheaper by more than this.
constexpr double kImproveEps = 1e-9;

// Keys are never negative, so adding one half and truncating rounds.
std::int64_t quantize(double v) { return static_cast<std::int64_t>(v * (1.0 / kKeyQuantum) + 0.5); }

struct OpenEntry {
  std::int64_t f;
  std::int64_t h;
  std::uint64_t seq;
  std::int32_t node;
};

struct OpenAfter {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.seq > b.seq;
  }
};

std::vector<Turn> successors_for(const ActionSet& actions, double heading, double limit) {
  std::vector<Turn> out;
  for (std::size_t i : actions.indices_within(heading, limit)) {
    out.push_back({static_cast<std::uint16_t>(i), angular_distance(heading, actions[i].direction)});
  }
  return out;
}

}  // namespace

PlanResult plan(const OccupancyGrid& grid, Pose start, Cell target, double speed,
                const RegionMask* region, const SearchConfig& cfg, const ActionSet& actions) {
  const auto t0 = Clock::now();
  cfg.validate();
  if (!grid.in_bounds(start.cell)) throw PlanError(PlanErrc::kStartOutOfBounds, "start out of bounds");
  if (!grid.in_bounds(target)) throw PlanError(PlanErrc::kTargetOutOfBounds, "target out of bounds");
  if (grid.occupied(start.cell)) throw PlanError(PlanErrc::kStartOccupied, "start cell is occupied");
  if (grid.occupied(target)) throw PlanError(PlanErrc::kTargetOccupied, "target cell is occupied");
  if (region != nullptr && !region->same_shape(grid.cells())) {
    throw std::invalid_argument("region mask dimensions differ from the grid");
  }

  const double limit = cfg.speed_profile.angle_limit(speed);
  const std::vector<std::vector<Turn>>& succ = actions.turn_table(limit);
  const std::vector<Turn> root_succ = successors_for(actions, start.heading, limit);

  const int width = grid.width();
  const int height = grid.height();
  const int bins = cfg.theta_bins;
  const std::uint8_t* occ = grid.cells().data().data();
  const std::uint8_t* mask = region != nullptr ? region->data().data() : nullptr;
  const auto cell_index = [width](int col, int row) {
    return static_cast<std::ptrdiff_t>(row) * width + col;
  };
  std::vector<int> action_bin(actions.size());
  std::vector<std::ptrdiff_t> action_step(actions.size());
  // Footprints as flat index offsets; every cell of a footprint lies in the
  // box spanned by its two endpoints, so an in-bounds child needs no further
  // bounds checks.
  std::vector<std::vector<std::ptrdiff_t>> action_cells(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    action_bin[i] = theta_bin(actions[i].direction, bins);
    action_step[i] = cell_index(actions[i].dx, actions[i].dy);
    for (const Cell& off : actions.footprint(i)) action_cells[i].push_back(cell_index(off.col, off.row));
  }
  const double tol2 = cfg.goal_tolerance * cfg.goal_tolerance;
  const double limit_ms = cfg.time_limit_ms;

  // Best node per state, with its g: a block of `bins` slots per touched cell.
  struct Slot {
    double g;
    std::int32_t node;  // -1 while unset
  };
  std::vector<std::int32_t> cell_block(static_cast<std::size_t>(width) * height, -1);
  std::vector<Slot> best;
  best.reserve(static_cast<std::size_t>(bins) * 1024);
  const auto slot_of = [&](std::ptrdiff_t cell, int bin) {
    std::int32_t& block = cell_block[static_cast<std::size_t>(cell)];
    if (block < 0) {
      block = static_cast<std::int32_t>(best.size());
      best.resize(best.size() + static_cast<std::size_t>(bins), Slot{0.0, -1});
    }
    return static_cast<std::size_t>(block) + static_cast<std::size_t>(bin);
  };
  const auto heuristic = [&](int col, int row) {
    const double dc = col - target.col;
    const double dr = row - target.row;
    return std::sqrt(dc * dc + dr * dr);
  };
  // Margin inside which no action can leave the grid.
  const int margin = kWindowHalf;

  PlanResult result;
  result.traced = cfg.record_trace;
  std::vector<SearchNode> nodes;
  std::vector<std::int16_t> node_action;  // action that produced the node, -1 for root
  // Sequence number of the node's live queue entry; a node not yet expanded
  // is updated in place when a cheaper route turns up, which leaves its older
  // entries stale.
  std::vector<std::uint64_t> node_seq;
  std::vector<std::uint8_t> node_closed;
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenAfter> open;
  std::uint64_t seq = 0;
  nodes.reserve(4096);
  node_action.reserve(4096);
  node_seq.reserve(4096);
  node_closed.reserve(4096);

  {
    SearchNode root;
    root.col = start.cell.col;
    root.row = start.cell.row;
    root.theta_bin = theta_bin(start.heading, bins);
    root.heading = start.heading;
    root.g = 0.0;
    root.h = heuristic(root.col, root.row);
    root.f = root.g + root.h;
    nodes.push_back(root);
    node_action.push_back(-1);
    node_seq.push_back(seq);
    node_closed.push_back(0);
    const std::size_t k = slot_of(cell_index(root.col, root.row), root.theta_bin);
    best[k] = Slot{0.0, 0};
    open.push({quantize(root.f), quantize(root.h), seq++, 0});
    ++result.stats.pushed;
  }

  std::int32_t terminal = -1;
  result.status = PlanStatus::kExhausted;
  while (!open.empty()) {
    if (std::chrono::duration<double, std::milli>(Clock::now() - t0).count() >= limit_ms) {
      result.status = PlanStatus::kTimeout;
      break;
    }
    const OpenEntry top = open.top();
    open.pop();
    const auto cur_idx = static_cast<std::size_t>(top.node);
    if (node_seq[cur_idx] != top.seq) continue;  // stale: node updated in place
    const SearchNode cur = nodes[cur_idx];
    const std::ptrdiff_t cur_cell = cell_index(cur.col, cur.row);
    if (best[slot_of(cur_cell, cur.theta_bin)].node != top.node) continue;  // superseded by a cheaper copy

    node_closed[cur_idx] = 1;
    ++result.stats.expanded;
    if (cfg.record_trace) result.trace.push_back({cur.col, cur.row, cur.theta_bin});
    if (mask != nullptr && mask[cur_cell] != 0) ++result.stats.region_hits;

    const double dc = cur.col - target.col;
    const double dr = cur.row - target.row;
    if (dc * dc + dr * dr <= tol2) {
      result.status = PlanStatus::kReached;
      terminal = top.node;
      break;
    }

    const std::int16_t via = node_action[static_cast<std::size_t>(top.node)];
    const auto& children = via < 0 ? root_succ : succ[static_cast<std::size_t>(via)];
    const bool interior = cur.col >= margin && cur.row >= margin && cur.col < width - margin &&
                          cur.row < height - margin;
    for (const Turn& s : children) {
      const Action& a = actions[s.action];
      const int col = cur.col + a.dx;
      const int row = cur.row + a.dy;
      if (!interior && (col < 0 || row < 0 || col >= width || row >= height)) continue;
      const std::ptrdiff_t cell = cur_cell + action_step[s.action];
      if (occ[cell] != 0) continue;

      const bool in_region = mask != nullptr && mask[cell] != 0;
      const double cost = a.length + cfg.delta_ang_weight * s.turn;
      const double g = in_region ? cur.g + cost * cfg.w : cur.g + cost;
      const int bin = action_bin[s.action];
      const std::size_t k = slot_of(cell, bin);
      if (best[k].node >= 0 && !(g < best[k].g - kImproveEps)) continue;

      bool blocked = false;
      for (const std::ptrdiff_t off : action_cells[s.action]) {
        if (occ[cur_cell + off] != 0) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;

      SearchNode next;
      next.col = col;
      next.row = row;
      next.theta_bin = bin;
      next.heading = a.direction;
      next.g = g;
      next.h = heuristic(col, row);
      if (in_region) next.h *= cfg.w;
      next.f = next.g + next.h;
      next.parent = top.node;
      std::int32_t idx = best[k].node;
      if (idx >= 0 && !node_closed[static_cast<std::size_t>(idx)]) {
        nodes[static_cast<std::size_t>(idx)] = next;
        node_action[static_cast<std::size_t>(idx)] = static_cast<std::int16_t>(s.action);
        node_seq[static_cast<std::size_t>(idx)] = seq;
      } else {
        idx = static_cast<std::int32_t>(nodes.size());
        nodes.push_back(next);
        node_action.push_back(static_cast<std::int16_t>(s.action));
        node_seq.push_back(seq);
        node_closed.push_back(0);
      }
      best[k] = Slot{g, idx};
      open.push({quantize(next.f), quantize(next.h), seq++, idx});
      ++result.stats.pushed;
    }
  }

  if (terminal >= 0) {
    result.path = backtrack(nodes, static_cast<std::size_t>(terminal));
    result.cost = path_cost(result.path, cfg);
  }
  result.stats.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return result;
}

}  // namespace rastar
