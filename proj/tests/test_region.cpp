#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rastar/raster_io.hpp"
#include "rastar/region.hpp"
#include "test_util.hpp"

using namespace rastar;

namespace {

constexpr double kUp = std::numbers::pi / 2;

const ActionSet& table() {
  static const ActionSet set = ActionSet::build();
  return set;
}

}  // namespace

TEST_CASE("mask file names") {
  CHECK(mask_filename("s0", 0) == "mask_s0_0.pgm");
  CHECK(mask_filename("lot-7", 12) == "mask_lot-7_12.pgm");
}

TEST_CASE("source kinds round trip by name") {
  for (SourceKind k : {SourceKind::kNull, SourceKind::kFile, SourceKind::kOracle}) {
    CHECK(parse_source_kind(to_string(k)) == k);
  }
  CHECK(kind_of(NullSource{}) == SourceKind::kNull);
  CHECK(kind_of(FileSource{}) == SourceKind::kFile);
  CHECK(kind_of(OracleSource{}) == SourceKind::kOracle);
  CHECK_THROWS(parse_source_kind("fcn"));
}

TEST_CASE("the null source predicts nothing") {
  const OccupancyGrid g = open_grid(40, 40, {20, 35});
  const std::vector<Cell> targets{{20, 5}, {5, 5}};
  const auto preds = predict_batch(NullSource{}, {g, {{20, 35}, kUp}, 0.0, table()}, targets);
  REQUIRE(preds.size() == 2);
  for (const auto& p : preds) {
    CHECK_FALSE(p.mask.has_value());
    CHECK(p.error.empty());
  }
}

TEST_CASE("oracle masks contain the plain path and its neighborhood") {
  BitGrid cells(80, 80);
  for (int c = 25; c <= 55; ++c) cells.set({c, 40});
  const OccupancyGrid g(cells, 0.2, {40, 75});
  const Pose start{{40, 75}, kUp};
  const std::vector<Cell> targets{{40, 10}, {70, 20}};
  const OracleSource oracle;
  const auto preds = predict_batch(oracle, {g, start, 0.0, table()}, targets);
  REQUIRE(preds.size() == 2);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    REQUIRE(preds[i].mask.has_value());
    const RegionMask& m = *preds[i].mask;
    const PlanResult r = plan(g, start, targets[i], 0.0, nullptr, oracle.search, table());
    REQUIRE(r.reached());
    // Every cell within the radius of a path vertex is covered.
    for (const Pose& p : r.path) {
      for (int dr = -5; dr <= 5; ++dr)
        for (int dc = -5; dc <= 5; ++dc) {
          const Cell c{p.cell.col + dc, p.cell.row + dr};
          if (dc * dc + dr * dr <= 25 && g.in_bounds(c)) CHECK(m.test(c));
        }
    }
    // ...and nothing farther than radius from the drawn path.
    const BitGrid line = rasterize_path(r.path, 80, 80);
    for (int row = 0; row < 80; ++row)
      for (int col = 0; col < 80; ++col) {
        if (!m.test({col, row})) continue;
        bool near = false;
        for (int dr = -5; dr <= 5 && !near; ++dr)
          for (int dc = -5; dc <= 5 && !near; ++dc) {
            const Cell c{col + dc, row + dr};
            near = dc * dc + dr * dr <= 25 && line.in_bounds(c) && line.test(c);
          }
        CHECK(near);
      }
  }
}

TEST_CASE("oracle gives no mask for an unreachable or occupied target") {
  BitGrid cells(40, 40);
  for (int i = 10; i <= 20; ++i) {
    cells.set({i, 10});
    cells.set({i, 20});
    cells.set({10, i});
    cells.set({20, i});
  }
  const OccupancyGrid g(cells, 0.2, {35, 35});
  const std::vector<Cell> targets{{15, 15}, {10, 10}, {30, 5}};
  const auto preds = predict_batch(OracleSource{}, {g, {{35, 35}, kUp}, 0.0, table()}, targets);
  CHECK_FALSE(preds[0].mask.has_value());
  CHECK_FALSE(preds[1].mask.has_value());
  CHECK(preds[2].mask.has_value());
}

TEST_CASE("oracle batches do not depend on parallelism") {
  const OccupancyGrid g = random_grid(11, 90, 90, 0.05, {{45, 85}, {10, 10}, {80, 12}, {45, 5}, {20, 40}});
  const std::vector<Cell> targets{{10, 10}, {80, 12}, {45, 5}, {20, 40}};
  const PlanContext ctx{g, {{45, 85}, kUp}, 2.0, table()};
  const auto a = predict_batch(OracleSource{}, ctx, targets, true);
  const auto b = predict_batch(OracleSource{}, ctx, targets, false);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].mask == b[i].mask);
  CHECK_THROWS_AS(predict_batch(OracleSource{3}, ctx, std::vector<Cell>{{90, 0}}), std::out_of_range);
  CHECK_THROWS_AS(predict_batch(OracleSource{0}, ctx, targets), std::invalid_argument);
}

TEST_CASE("file source loads masks by index and reports bad entries") {
  const TempDir dir("region_file");
  const OccupancyGrid g = open_grid(30, 20, {15, 18});
  BitGrid first(30, 20);
  first.set({3, 4});
  write_pgm(first, dir.path() / mask_filename("sc", 0));
  write_pgm(BitGrid(31, 20), dir.path() / mask_filename("sc", 2));
  const std::vector<Cell> targets{{1, 1}, {2, 2}, {3, 3}};
  const auto preds = predict_batch(FileSource{dir.path(), "sc"}, {g, {{15, 18}, kUp}, 0.0, table()}, targets);
  REQUIRE(preds.size() == 3);
  REQUIRE(preds[0].mask.has_value());
  CHECK(*preds[0].mask == first);
  CHECK(preds[0].error.empty());
  CHECK_FALSE(preds[1].mask.has_value());
  CHECK_FALSE(preds[1].error.empty());  // missing
  CHECK_FALSE(preds[2].mask.has_value());
  CHECK_FALSE(preds[2].error.empty());  // wrong size
}

TEST_CASE("network input channels") {
  BitGrid cells(40, 40);
  cells.set({2, 2});
  const OccupancyGrid g(cells, 0.2, {20, 35});
  const ReferencePath ref({{{20, 35}, kUp}, {{20, 5}, kUp}});
  const RgbRaster img = render_fcn_input(g, ref, {30, 10});
  CHECK(img.width == 40);
  CHECK(img.height == 40);
  CHECK(img.channel_bits(0) == cells);
  CHECK(img.channel_bits(1) == dilate(rasterize_polyline(ref.cells(), 40, 40), 3));
  BitGrid dot(40, 40);
  dot.set({30, 10});
  CHECK(img.channel_bits(2) == dilate(dot, 4));
  CHECK(img.at({30, 10}, 2) == 255);
  CHECK(img.at({20, 20}, 1) == 255);
  CHECK(img.at({26, 20}, 1) == 0);
  CHECK_THROWS_AS(render_fcn_input(g, ref, {40, 0}), std::out_of_range);
}

TEST_CASE("path region of a straight path is a capsule") {
  const std::vector<Pose> path{{{10, 30}, kUp}, {{10, 10}, kUp}};
  const RegionMask m = path_region(path, 40, 40, 2);
  CHECK(m.test({10, 20}));
  CHECK(m.test({12, 20}));
  CHECK_FALSE(m.test({13, 20}));
  CHECK(m.test({10, 8}));
  CHECK_FALSE(m.test({10, 7}));
  CHECK(rasterize_path(path, 40, 40).count() == 21);
}
