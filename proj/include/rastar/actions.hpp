#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rastar/grid.hpp"

namespace rastar {

inline constexpr int kWindowHalf = 10;  // 21 x 21 lookup window

/// One lookup-table motion: a cell offset with its direction and length.
/// dy is a row offset (+row is down); direction is atan2(-dy, dx).
struct Action {
  int dx = 0;
  int dy = 0;
  double direction = 0.0;
  double length = 0.0;
};

enum class ActionMode {
  kCoprime,     // visible lattice points only: one action per direction
  kAllOffsets,  // every nonzero offset in the window
};

ActionMode parse_action_mode(const std::string& name);
const char* to_string(ActionMode mode);

/// A child action and its angular distance from the parent heading.
struct Turn {
  std::uint16_t action;
  double turn;
};

/// Immutable action table sorted by direction, then length.
class ActionSet {
 public:
  static ActionSet build(ActionMode mode = ActionMode::kCoprime);

  std::span<const Action> actions() const { return actions_; }
  std::size_t size() const { return actions_.size(); }
  const Action& operator[](std::size_t i) const { return actions_[i]; }
  ActionMode mode() const { return mode_; }

  bool contains(int dx, int dy) const;

  /// Cells crossed by action i relative to its origin (origin excluded,
  /// endpoint included), in walk order.
  std::span<const Cell> footprint(std::size_t i) const { return footprints_[i]; }

  /// Actions whose circular angular distance to heading is <= limit, in
  /// table order.
  std::vector<Action> children_within(double heading, double limit) const;
  std::vector<std::size_t> indices_within(double heading, double limit) const;

  /// For every action i, the Turns allowed after arriving via i. Built once
  /// per distinct limit and shared; safe to call from several threads.
  const std::vector<std::vector<Turn>>& turn_table(double limit) const;

  /// CSV dump: header "dx,dy,direction,length", one action per line.
  std::string to_csv() const;

 private:
  ActionSet(ActionMode mode, std::vector<Action> actions);

  ActionMode mode_;
  std::vector<Action> actions_;
  std::vector<std::vector<Cell>> footprints_;
  struct TurnCache;
  std::shared_ptr<TurnCache> turn_cache_;
};

/// Piecewise-constant map from vehicle speed to the allowed heading change
/// per expansion.
class SpeedProfile {
 public:
  struct Breakpoint {
    double speed;  // m/s
    double limit;  // radians
  };

  // (0 -> 120 deg), (2 -> 90), (5 -> 60), (10 -> 40)
  static SpeedProfile default_profile();
  static SpeedProfile constant(double limit);

  explicit SpeedProfile(std::vector<Breakpoint> breakpoints);

  std::span<const Breakpoint> breakpoints() const { return breakpoints_; }

  /// Limit of the last breakpoint whose speed is <= speed; the first limit
  /// below the first breakpoint.
  double angle_limit(double speed) const;

 private:
  std::vector<Breakpoint> breakpoints_;
};

}  // namespace rastar
