#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "rastar/grid.hpp"

using namespace rastar;

namespace {

// p / q with q > 0.
struct Frac {
  long long p;
  long long q;
};
bool less(Frac a, Frac b) { return a.p * b.q < b.p * a.q; }
Frac make(long long p, long long q) { return q < 0 ? Frac{-p, -q} : Frac{p, q}; }

// Entry parameter of the segment between cell centers a and b into the open
// square of cell c, or nullopt when the segment misses the interior.
std::optional<Frac> clip_entry(Cell a, Cell b, Cell c) {
  Frac lo{0, 1};
  Frac hi{1, 1};
  const auto axis = [&](int from, int to, int at) {
    const long long d = to - from;
    if (d == 0) return from == at;
    // Open slab (2(at - from) - 1) / 2d .. (2(at - from) + 1) / 2d.
    Frac t0 = make(2LL * (at - from) - 1, 2 * d);
    Frac t1 = make(2LL * (at - from) + 1, 2 * d);
    if (less(t1, t0)) std::swap(t0, t1);
    if (less(lo, t0)) lo = t0;
    if (less(t1, hi)) hi = t1;
    return true;
  };
  if (!axis(a.col, b.col, c.col) || !axis(a.row, b.row, c.row)) return std::nullopt;
  if (!less(lo, hi)) return std::nullopt;
  // Endpoint cells contain their center, so the closed [0, 1] range is fine.
  return lo;
}

std::vector<Cell> oracle_cells(Cell a, Cell b) {
  std::vector<std::pair<Frac, Cell>> hits;
  for (int r = std::min(a.row, b.row); r <= std::max(a.row, b.row); ++r)
    for (int c = std::min(a.col, b.col); c <= std::max(a.col, b.col); ++c)
      if (auto t = clip_entry(a, b, {c, r})) hits.push_back({*t, {c, r}});
  std::stable_sort(hits.begin(), hits.end(),
                   [](const auto& x, const auto& y) { return less(x.first, y.first); });
  std::vector<Cell> out;
  for (const auto& h : hits) out.push_back(h.second);
  return out;
}

std::vector<Cell> walked(Cell a, Cell b) {
  std::vector<Cell> out;
  walk_line(a, b, [&](Cell c) {
    out.push_back(c);
    return true;
  });
  return out;
}

BitGrid random_walls(std::mt19937& rng, int w, int h, double density) {
  std::bernoulli_distribution bit(density);
  BitGrid m(w, h);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      if (bit(rng)) m.set({c, r});
  return m;
}

}  // namespace

TEST_CASE("trace_line of a single free cell is clear") {
  BitGrid g(5, 5);
  CHECK_FALSE(trace_line(g, {2, 2}, {2, 2}).has_value());
  g.set({2, 2});
  CHECK(trace_line(g, {2, 2}, {2, 2}) == Cell{2, 2});
}

TEST_CASE("trace_line reports the wall cell on a straight corridor") {
  BitGrid g(30, 5);
  g.set({17, 2});
  g.set({22, 2});
  CHECK(trace_line(g, {1, 2}, {28, 2}) == Cell{17, 2});
  CHECK(trace_line(g, {28, 2}, {1, 2}) == Cell{22, 2});
  CHECK_FALSE(trace_line(g, {1, 3}, {28, 3}).has_value());
}

TEST_CASE("trace_line rejects endpoints outside the grid") {
  BitGrid g(10, 10);
  CHECK_THROWS_AS(trace_line(g, {-1, 0}, {3, 3}), std::out_of_range);
  CHECK_THROWS_AS(trace_line(g, {0, 0}, {3, 10}), std::out_of_range);
  const OccupancyGrid og(g, 0.2, {0, 0});
  CHECK_THROWS_AS(trace_line(og, {0, 0}, {10, 0}), std::out_of_range);
}

TEST_CASE("exact corner crossings step diagonally") {
  const auto cells = walked({0, 0}, {3, 3});
  CHECK(cells == std::vector<Cell>{{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  // (0,0)->(2,6) passes exactly through the corner between rows 1/2 and cols 0/1.
  CHECK(walked({0, 0}, {2, 6}) == oracle_cells({0, 0}, {2, 6}));
}

TEST_CASE("line walk equals the cells whose interior the segment crosses") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> coord(-12, 12);
  for (int i = 0; i < 2000; ++i) {
    const Cell a{coord(rng), coord(rng)};
    const Cell b{coord(rng), coord(rng)};
    const auto got = walked(a, b);
    REQUIRE(got == oracle_cells(a, b));
    for (std::size_t k = 1; k < got.size(); ++k) {
      CHECK(std::abs(got[k].col - got[k - 1].col) <= 1);
      CHECK(std::abs(got[k].row - got[k - 1].row) <= 1);
    }
  }
}

TEST_CASE("trace_line agrees with the per-cell oracle on random grids") {
  std::mt19937 rng(33);
  int blocked = 0;
  for (int i = 0; i < 200; ++i) {
    const BitGrid g = random_walls(rng, 40, 30, 0.04);
    std::uniform_int_distribution<int> col(0, 39);
    std::uniform_int_distribution<int> row(0, 29);
    const Cell a{col(rng), row(rng)};
    const Cell b{col(rng), row(rng)};
    std::optional<Cell> want;
    for (const Cell& c : oracle_cells(a, b)) {
      if (g.test(c)) {
        want = c;
        break;
      }
    }
    CHECK(trace_line(g, a, b) == want);
    if (want) ++blocked;

    // A 0.1-cell supersampled walk only sees cells the segment enters, so any
    // obstacle it finds must also stop trace_line. Samples sitting exactly on
    // a cell corner are ambiguous and skipped.
    const double len = std::hypot(b.col - a.col, b.row - a.row);
    const int steps = std::max(1, static_cast<int>(std::ceil(len / 0.1)));
    bool sampled_hit = false;
    for (int k = 0; k <= steps; ++k) {
      const double t = static_cast<double>(k) / steps;
      const double x = a.col + t * (b.col - a.col);
      const double y = a.row + t * (b.row - a.row);
      const double fx = x + 0.5 - std::floor(x + 0.5);
      const double fy = y + 0.5 - std::floor(y + 0.5);
      if ((fx < 1e-9 || fx > 1 - 1e-9) && (fy < 1e-9 || fy > 1 - 1e-9)) continue;
      const Cell c{static_cast<int>(std::floor(x + 0.5)), static_cast<int>(std::floor(y + 0.5))};
      if (g.test(c)) sampled_hit = true;
    }
    if (sampled_hit) CHECK(want.has_value());
  }
  CHECK(blocked > 20);
}

TEST_CASE("trace_line verdict is symmetric") {
  std::mt19937 rng(44);
  for (int i = 0; i < 300; ++i) {
    const BitGrid g = random_walls(rng, 25, 25, 0.05);
    std::uniform_int_distribution<int> coord(0, 24);
    const Cell a{coord(rng), coord(rng)};
    const Cell b{coord(rng), coord(rng)};
    CHECK(trace_line(g, a, b).has_value() == trace_line(g, b, a).has_value());
    auto fwd = walked(a, b);
    std::reverse(fwd.begin(), fwd.end());
    const auto back = walked(b, a);
    std::set<std::pair<int, int>> s1, s2;
    for (auto c : fwd) s1.insert({c.col, c.row});
    for (auto c : back) s2.insert({c.col, c.row});
    CHECK(s1 == s2);
  }
}
