#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "rastar/search.hpp"
#include "test_util.hpp"

using namespace rastar;

namespace {

const ActionSet& table() {
  static const ActionSet set = ActionSet::build();
  return set;
}

constexpr double kUp = std::numbers::pi / 2;

SearchConfig roomy() {
  SearchConfig cfg;
  cfg.time_limit_ms = 10000.0;
  return cfg;
}

PlanErrc plan_error(const OccupancyGrid& g, Pose start, Cell target) {
  try {
    plan(g, start, target, 0.0, nullptr, roomy(), table());
  } catch (const PlanError& e) {
    return e.code();
  }
  FAIL("plan did not throw");
  return PlanErrc::kStartOccupied;
}

}  // namespace

TEST_CASE("start within the goal tolerance returns the start alone") {
  const OccupancyGrid g = open_grid(30, 30, {15, 15});
  const PlanResult r = plan(g, {{15, 15}, kUp}, {15, 15}, 0.0, nullptr, roomy(), table());
  REQUIRE(r.reached());
  CHECK(r.path.size() == 1);
  CHECK(r.stats.expanded == 1);
  CHECK(r.cost == 0.0);

  const PlanResult near = plan(g, {{15, 15}, kUp}, {16, 15}, 0.0, nullptr, roomy(), table());
  CHECK(near.path.size() == 1);
}

TEST_CASE("walled-in target exhausts the search") {
  BitGrid cells(32, 32);
  for (int i = 20; i <= 28; ++i) {
    cells.set({i, 20});
    cells.set({i, 28});
    cells.set({20, i});
    cells.set({28, i});
  }
  const OccupancyGrid g(cells, 0.2, {4, 4});
  const PlanResult r = plan(g, {{4, 4}, 0.0}, {24, 24}, 0.0, nullptr, roomy(), table());
  CHECK(r.status == PlanStatus::kExhausted);
  CHECK(r.path.empty());
  CHECK(r.stats.expanded > 0);
}

TEST_CASE("straight run on an open map follows the axis") {
  const OccupancyGrid g = open_grid(40, 60, {20, 55});
  const PlanResult r = plan(g, {{20, 55}, kUp}, {20, 5}, 12.0, nullptr, roomy(), table());
  REQUIRE(r.reached());
  // Stops one cell short: the goal tolerance is one cell.
  CHECK(r.path.back().cell == Cell{20, 6});
  CHECK(r.cost == doctest::Approx(49.0));
  for (const Pose& p : r.path) CHECK(p.cell.col == 20);
}

TEST_CASE("path cost matches full-state Dijkstra on small random grids") {
  const ActionSet& actions = table();
  SearchConfig cfg = roomy();
  cfg.delta_ang_weight = 0.0;
  cfg.w = 1.0;
  cfg.goal_tolerance = 0.0;
  // Wide enough that no two table directions share a bin.
  cfg.theta_bins = 2048;
  int reached = 0;
  for (std::uint32_t seed = 0; seed < 8; ++seed) {
    std::mt19937 rng(seed + 100);
    std::uniform_int_distribution<int> coord(0, 14);
    const Cell s{coord(rng), coord(rng)};
    const Cell t{coord(rng), coord(rng)};
    const OccupancyGrid g = random_grid(seed, 15, 15, 0.2, {s, t});
    const Pose start{s, std::uniform_real_distribution<double>(-3.0, 3.0)(rng)};
    const double speed = 5.0;
    const PlanResult r = plan(g, start, t, speed, nullptr, cfg, actions);
    const auto want = dijkstra_cost(g, start, t, speed, cfg, actions);
    CHECK(r.reached() == want.has_value());
    if (r.reached() && want) {
      ++reached;
      CHECK(std::abs(r.cost - *want) <= 1e-9);
      CHECK(path_problem(g, start, t, speed, cfg, actions, r.path) == "");
    }
  }
  CHECK(reached >= 4);
}

TEST_CASE("no mask and an empty mask pop the same states") {
  const ActionSet& actions = table();
  SearchConfig cfg = roomy();
  cfg.record_trace = true;
  const OccupancyGrid g = random_grid(7, 60, 60, 0.08, {{30, 55}, {25, 5}});
  const Pose start{{30, 55}, kUp};
  const RegionMask empty(60, 60);
  const PlanResult a = plan(g, start, {25, 5}, 3.0, nullptr, cfg, actions);
  const PlanResult b = plan(g, start, {25, 5}, 3.0, &empty, cfg, actions);
  REQUIRE(a.traced);
  CHECK(a.trace == b.trace);
  CHECK(a.path == b.path);
  CHECK(b.stats.region_hits == 0);
}

TEST_CASE("weight one makes the mask irrelevant") {
  const ActionSet& actions = table();
  SearchConfig cfg = roomy();
  cfg.w = 1.0;
  const OccupancyGrid g = random_grid(8, 60, 60, 0.08, {{30, 55}, {40, 8}});
  const Pose start{{30, 55}, kUp};
  RegionMask half(60, 60);
  for (int r = 0; r < 60; ++r)
    for (int c = 0; c < 30; ++c) half.set({c, r});
  const PlanResult a = plan(g, start, {40, 8}, 3.0, nullptr, cfg, actions);
  const PlanResult b = plan(g, start, {40, 8}, 3.0, &half, cfg, actions);
  CHECK(a.path == b.path);
  CHECK(a.stats.expanded == b.stats.expanded);
}

TEST_CASE("returned paths are sound on random maps") {
  const ActionSet& actions = table();
  const SearchConfig cfg = roomy();
  int reached = 0;
  for (std::uint32_t seed = 0; seed < 12; ++seed) {
    const Cell s{40, 75};
    std::mt19937 rng(seed);
    const Cell t{std::uniform_int_distribution<int>(2, 77)(rng), std::uniform_int_distribution<int>(2, 40)(rng)};
    const OccupancyGrid g = random_grid(seed + 50, 80, 80, 0.06, {s, t});
    const double speed = static_cast<double>(seed % 4) * 4.0;
    // A mask over the left half shifts the search but must not break paths.
    RegionMask mask(80, 80);
    for (int r = 0; r < 80; ++r)
      for (int c = 0; c < 40; ++c) mask.set({c, r});
    for (const RegionMask* m : {static_cast<const RegionMask*>(nullptr), static_cast<const RegionMask*>(&mask)}) {
      const PlanResult r = plan(g, {s, kUp}, t, speed, m, cfg, actions);
      if (!r.reached()) continue;
      ++reached;
      CHECK(path_problem(g, {s, kUp}, t, speed, cfg, actions, r.path) == "");
      CHECK(r.cost == doctest::Approx(path_cost(r.path, cfg)));
      for (std::size_t i = 1; i < r.path.size(); ++i) CHECK(step_cost(r.path[i - 1], r.path[i], cfg) > 0.0);
    }
  }
  CHECK(reached >= 12);
}

TEST_CASE("search statistics stay consistent") {
  const ActionSet& actions = table();
  const OccupancyGrid g = random_grid(3, 70, 70, 0.05, {{35, 65}, {10, 10}});
  RegionMask full(70, 70);
  for (int r = 0; r < 70; ++r)
    for (int c = 0; c < 70; ++c) full.set({c, r});
  const PlanResult plain = plan(g, {{35, 65}, kUp}, {10, 10}, 0.0, nullptr, roomy(), actions);
  const PlanResult all = plan(g, {{35, 65}, kUp}, {10, 10}, 0.0, &full, roomy(), actions);
  for (const PlanResult* r : {&plain, &all}) {
    CHECK(r->stats.expanded <= r->stats.pushed);
    CHECK(r->stats.region_hits <= r->stats.expanded);
    CHECK(r->stats.elapsed_ms >= 0.0);
  }
  CHECK(plain.stats.region_hits == 0);
  CHECK(all.stats.region_hits == all.stats.expanded);
  CHECK_FALSE(plain.traced);
  CHECK(plain.trace.empty());
}

TEST_CASE("an exhausted time budget reports a timeout") {
  const OccupancyGrid g = open_grid(300, 300, {150, 290});
  SearchConfig cfg;
  cfg.time_limit_ms = 1e-6;
  const PlanResult r = plan(g, {{150, 290}, kUp}, {10, 5}, 0.0, nullptr, cfg, table());
  CHECK(r.status == PlanStatus::kTimeout);
  CHECK(r.path.empty());
  CHECK(std::string(to_string(r.status)) == "timeout");
}

TEST_CASE("bad requests raise distinct errors") {
  BitGrid cells(20, 20);
  cells.set({5, 5});
  const OccupancyGrid g(cells, 0.2, {1, 1});
  CHECK(plan_error(g, {{-1, 0}, 0.0}, {3, 3}) == PlanErrc::kStartOutOfBounds);
  CHECK(plan_error(g, {{1, 1}, 0.0}, {20, 3}) == PlanErrc::kTargetOutOfBounds);
  CHECK(plan_error(g, {{5, 5}, 0.0}, {3, 3}) == PlanErrc::kStartOccupied);
  CHECK(plan_error(g, {{1, 1}, 0.0}, {5, 5}) == PlanErrc::kTargetOccupied);

  const RegionMask wrong(19, 20);
  CHECK_THROWS_AS(plan(g, {{1, 1}, 0.0}, {3, 3}, 0.0, &wrong, roomy(), table()), std::invalid_argument);

  SearchConfig bad = roomy();
  bad.w = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = roomy();
  bad.w = 1.5;
  CHECK_THROWS(bad.validate());
  bad = roomy();
  bad.theta_bins = 4;
  CHECK_THROWS(bad.validate());
  bad = roomy();
  bad.time_limit_ms = 0.0;
  CHECK_THROWS(bad.validate());
  bad = roomy();
  bad.delta_ang_weight = -1.0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("backtrack walks parents root first") {
  std::vector<SearchNode> nodes(1);
  nodes[0].col = 3;
  nodes[0].row = 4;
  CHECK(backtrack(nodes, 0) == std::vector<Pose>{{{3, 4}, 0.0}});

  nodes.resize(3);
  nodes[1] = SearchNode{5, 4, 0, 0.0, 2.0, 0.0, 2.0, 0};
  nodes[2] = SearchNode{5, 2, 18, kUp, 4.0, 0.0, 4.0, 1};
  const auto path = backtrack(nodes, 2);
  REQUIRE(path.size() == 3);
  CHECK(path[0].cell == Cell{3, 4});
  CHECK(path[1].cell == Cell{5, 4});
  CHECK(path[2].cell == Cell{5, 2});
  CHECK(path[2].heading == kUp);

  nodes[0].parent = 2;
  CHECK_THROWS_AS(backtrack(nodes, 2), std::logic_error);
}

TEST_CASE("theta bins wrap and cover the circle evenly") {
  CHECK(theta_bin(0.0, 72) == 0);
  CHECK(theta_bin(2 * std::numbers::pi, 72) == 0);
  CHECK(theta_bin(-1e-12, 72) == 71);
  CHECK(theta_bin(kUp, 72) == 18);
  CHECK(theta_bin(std::numbers::pi, 72) == 36);
  CHECK(theta_bin(-kUp, 72) == 54);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> angle(-20.0, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = angle(rng);
    const int b = theta_bin(a, 72);
    CHECK(b >= 0);
    CHECK(b < 72);
    // The bin's arc contains the angle, up to rounding at its edges.
    const double width = 2 * std::numbers::pi / 72;
    const double wrapped = a - 2 * std::numbers::pi * std::floor(a / (2 * std::numbers::pi));
    CHECK(wrapped >= b * width - 1e-9);
    CHECK(wrapped <= (b + 1) * width + 1e-9);
  }
}

TEST_CASE("a region along the route cuts expansions") {
  // Target behind a wall: the plain search floods the area in front of it.
  BitGrid cells(80, 80);
  for (int c = 20; c <= 60; ++c) cells.set({c, 40});
  const OccupancyGrid g(cells, 0.2, {40, 75});
  const Pose start{{40, 75}, kUp};
  const PlanResult plain = plan(g, start, {40, 10}, 0.0, nullptr, roomy(), table());
  REQUIRE(plain.reached());
  const RegionMask region = dilate(rasterize_polyline([&] {
    std::vector<Cell> pts;
    for (const Pose& p : plain.path) pts.push_back(p.cell);
    return pts;
  }(), 80, 80), 5);
  const PlanResult aided = plan(g, start, {40, 10}, 0.0, &region, roomy(), table());
  REQUIRE(aided.reached());
  CHECK(aided.stats.expanded < plain.stats.expanded);
  CHECK(path_problem(g, start, {40, 10}, 0.0, roomy(), table(), aided.path) == "");
}
