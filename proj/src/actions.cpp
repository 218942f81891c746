#include "rastar/actions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "rastar/grid.hpp"

namespace rastar {

ActionMode parse_action_mode(const std::string& name) {
  if (name == "coprime") return ActionMode::kCoprime;
  if (name == "all-offsets" || name == "all") return ActionMode::kAllOffsets;
  throw std::invalid_argument("unknown action mode: " + name);
}

const char* to_string(ActionMode mode) {
  return mode == ActionMode::kCoprime ? "coprime" : "all-offsets";
}

ActionSet ActionSet::build(ActionMode mode) {
  std::vector<Action> actions;
  for (int dy = -kWindowHalf; dy <= kWindowHalf; ++dy) {
    for (int dx = -kWindowHalf; dx <= kWindowHalf; ++dx) {
      if (dx == 0 && dy == 0) continue;
      if (mode == ActionMode::kCoprime && std::gcd(dx, dy) != 1) continue;
      Action a;
      a.dx = dx;
      a.dy = dy;
      // -dy as an int keeps the axis case at +0.0, so (-k, 0) maps to +pi.
      a.direction = std::atan2(static_cast<double>(-dy), static_cast<double>(dx));
      a.length = std::hypot(static_cast<double>(dx), static_cast<double>(dy));
      actions.push_back(a);
    }
  }
  std::sort(actions.begin(), actions.end(), [](const Action& a, const Action& b) {
    if (a.direction != b.direction) return a.direction < b.direction;
    return a.length < b.length;
  });
  return ActionSet(mode, std::move(actions));
}

struct ActionSet::TurnCache {
  std::mutex lock;
  std::vector<std::pair<double, std::unique_ptr<std::vector<std::vector<Turn>>>>> tables;
};

ActionSet::ActionSet(ActionMode mode, std::vector<Action> actions)
    : mode_(mode),
      actions_(std::move(actions)),
      footprints_(actions_.size()),
      turn_cache_(std::make_shared<TurnCache>()) {
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    walk_line({0, 0}, {actions_[i].dx, actions_[i].dy}, [&](Cell c) {
      if (c.col != 0 || c.row != 0) footprints_[i].push_back(c);
      return true;
    });
  }
}

const std::vector<std::vector<Turn>>& ActionSet::turn_table(double limit) const {
  const std::lock_guard<std::mutex> guard(turn_cache_->lock);
  for (const auto& [lim, table] : turn_cache_->tables)
    if (lim == limit) return *table;
  auto table = std::make_unique<std::vector<std::vector<Turn>>>(actions_.size());
  for (std::size_t v = 0; v < actions_.size(); ++v) {
    const double heading = actions_[v].direction;
    for (std::size_t i : indices_within(heading, limit)) {
      (*table)[v].push_back({static_cast<std::uint16_t>(i), angular_distance(heading, actions_[i].direction)});
    }
  }
  turn_cache_->tables.emplace_back(limit, std::move(table));
  return *turn_cache_->tables.back().second;
}

bool ActionSet::contains(int dx, int dy) const {
  return std::any_of(actions_.begin(), actions_.end(),
                     [&](const Action& a) { return a.dx == dx && a.dy == dy; });
}

std::vector<std::size_t> ActionSet::indices_within(double heading, double limit) const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  constexpr double slack = 1e-9;  // candidates only; the exact test follows
  std::vector<std::size_t> candidates;
  const double lo = normalize_angle(heading) - limit - slack;
  const double hi = normalize_angle(heading) + limit + slack;
  if (hi - lo >= two_pi) {
    candidates.resize(actions_.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i] = i;
  } else {
    const auto by_dir = [](const Action& a, double d) { return a.direction < d; };
    const auto dir_by = [](double d, const Action& a) { return d < a.direction; };
    for (int k = -1; k <= 1; ++k) {
      const auto first = std::lower_bound(actions_.begin(), actions_.end(), lo + k * two_pi, by_dir);
      const auto last = std::upper_bound(actions_.begin(), actions_.end(), hi + k * two_pi, dir_by);
      for (auto it = first; it < last; ++it) {
        candidates.push_back(static_cast<std::size_t>(it - actions_.begin()));
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  }
  std::vector<std::size_t> out;
  out.reserve(candidates.size());
  for (std::size_t i : candidates) {
    if (angular_distance(actions_[i].direction, heading) <= limit) out.push_back(i);
  }
  return out;
}

std::vector<Action> ActionSet::children_within(double heading, double limit) const {
  std::vector<Action> out;
  for (std::size_t i : indices_within(heading, limit)) out.push_back(actions_[i]);
  return out;
}

std::string ActionSet::to_csv() const {
  std::string out = "dx,dy,direction,length\n";
  char line[96];
  for (const Action& a : actions_) {
    std::snprintf(line, sizeof line, "%d,%d,%.12f,%.12f\n", a.dx, a.dy, a.direction, a.length);
    out += line;
  }
  return out;
}

SpeedProfile SpeedProfile::default_profile() {
  constexpr double deg = std::numbers::pi / 180.0;
  return SpeedProfile({{0.0, 120.0 * deg}, {2.0, 90.0 * deg}, {5.0, 60.0 * deg}, {10.0, 40.0 * deg}});
}

SpeedProfile SpeedProfile::constant(double limit) { return SpeedProfile({{0.0, limit}}); }

SpeedProfile::SpeedProfile(std::vector<Breakpoint> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.empty()) throw std::invalid_argument("speed profile needs a breakpoint");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const auto& b = breakpoints_[i];
    if (!(b.limit > 0.0) || b.limit > std::numbers::pi) {
      throw std::invalid_argument("angle limit must lie in (0, pi]");
    }
    if (i > 0 && (b.speed <= breakpoints_[i - 1].speed || b.limit > breakpoints_[i - 1].limit)) {
      throw std::invalid_argument(
          "speed profile must have increasing speeds and nonincreasing limits");
    }
  }
}

double SpeedProfile::angle_limit(double speed) const {
  if (speed < 0.0) throw std::invalid_argument("speed must be >= 0");
  double limit = breakpoints_.front().limit;
  for (const auto& b : breakpoints_) {
    if (b.speed <= speed) limit = b.limit;
  }
  return limit;
}

}  // namespace rastar
