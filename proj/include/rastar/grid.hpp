#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace rastar {

struct Cell {
  int col = 0;
  int row = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Position on the grid plus heading. Headings use +x = +col, +y = -row, so
// 0 points right and pi/2 points up the map.
struct Pose {
  Cell cell;
  double heading = 0.0;

  friend bool operator==(const Pose&, const Pose&) = default;
};

double cell_distance(Cell a, Cell b);

/// Row-major binary raster. Used directly for region masks and as the
/// occupancy layer of an OccupancyGrid.
class BitGrid {
 public:
  BitGrid() = default;
  BitGrid(int width, int height, bool fill = false);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return bits_.size(); }

  bool in_bounds(Cell c) const {
    return c.col >= 0 && c.row >= 0 && c.col < width_ && c.row < height_;
  }
  bool test(Cell c) const { return bits_[index(c)] != 0; }
  // Out-of-bounds reads as unset.
  bool test_or_false(Cell c) const { return in_bounds(c) && test(c); }
  void set(Cell c, bool value = true) { bits_[index(c)] = value ? 1 : 0; }

  std::size_t count() const;
  bool any() const;
  bool same_shape(const BitGrid& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }
  // True when every set bit of *this is also set in other.
  bool subset_of(const BitGrid& other) const;

  std::span<const std::uint8_t> data() const { return bits_; }
  std::span<std::uint8_t> data() { return bits_; }

  friend bool operator==(const BitGrid&, const BitGrid&) = default;

 private:
  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;  // 0 or 1
};

using RegionMask = BitGrid;

class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Binary obstacle raster with metric resolution and the vehicle anchor cell.
/// Immutable once built; the constructor enforces that the ego cell is in
/// bounds and free.
class OccupancyGrid {
 public:
  OccupancyGrid(BitGrid cells, double resolution, Cell ego);

  int width() const { return cells_.width(); }
  int height() const { return cells_.height(); }
  double resolution() const { return resolution_; }
  Cell ego() const { return ego_; }
  const BitGrid& cells() const { return cells_; }

  bool in_bounds(Cell c) const { return cells_.in_bounds(c); }
  bool occupied(Cell c) const { return cells_.test(c); }

 private:
  BitGrid cells_;
  double resolution_;
  Cell ego_;
};

/// Set iff some set bit of mask lies within Euclidean distance radius.
/// OpenMP-parallel separable kernel.
BitGrid dilate(const BitGrid& mask, int radius);

/// Serial disk-stamping version of dilate, kept as the reference kernel.
BitGrid dilate_reference(const BitGrid& mask, int radius);

/// Offsets (dcol, drow) of the discrete Euclidean disk of the given radius.
std::vector<Cell> disk_offsets(int radius);

/// Obstacles dilated by the vehicle radius. Throws GridError if the ego cell
/// ends up occupied.
OccupancyGrid inflate(const OccupancyGrid& grid, int vehicle_radius);

/// Calls visit(cell) for every cell crossed by the segment between the two
/// cell centers, from -> to inclusive. Cells the segment only touches at a
/// corner are skipped, so the walk is 8-connected. Returning false from the
/// visitor stops the walk.
template <typename Visitor>
void walk_line(Cell from, Cell to, Visitor&& visit) {
  const int dx = to.col > from.col ? to.col - from.col : from.col - to.col;
  const int dy = to.row > from.row ? to.row - from.row : from.row - to.row;
  const int sx = to.col > from.col ? 1 : -1;
  const int sy = to.row > from.row ? 1 : -1;
  Cell c = from;
  if (!visit(c)) return;
  int ix = 0;
  int iy = 0;
  while (ix < dx || iy < dy) {
    // Sign tells whether the next vertical or horizontal cell boundary comes
    // first along the segment; zero is an exact corner crossing.
    const long long decision = static_cast<long long>(1 + 2 * ix) * dy -
                               static_cast<long long>(1 + 2 * iy) * dx;
    if (decision == 0) {
      c.col += sx;
      c.row += sy;
      ++ix;
      ++iy;
    } else if (decision < 0) {
      c.col += sx;
      ++ix;
    } else {
      c.row += sy;
      ++iy;
    }
    if (!visit(c)) return;
  }
}

/// First occupied cell on the line from -> to, or nullopt when clear.
/// Throws std::out_of_range if either endpoint is outside the grid.
std::optional<Cell> trace_line(const BitGrid& cells, Cell from, Cell to);
std::optional<Cell> trace_line(const OccupancyGrid& grid, Cell from, Cell to);

/// Cells of the polyline through the given points, drawn with walk_line and
/// clipped to the raster.
BitGrid rasterize_polyline(std::span<const Cell> points, int width, int height);

// A point at arc length s along a polyline, with the local segment heading.
struct Station {
  double col = 0.0;
  double row = 0.0;
  double heading = 0.0;
};

/// Rough global route as a polyline of poses. At least two points, each
/// heading within pi/2 of the direction to the next point.
class ReferencePath {
 public:
  explicit ReferencePath(std::vector<Pose> points);

  std::span<const Pose> points() const { return points_; }
  std::vector<Cell> cells() const;
  double length() const { return cumulative_.back(); }
  // Clamped to [0, length()].
  Station station_at(double s) const;

 private:
  std::vector<Pose> points_;
  std::vector<double> cumulative_;
};

// Direction of travel from a to b in the heading convention above.
double heading_between(Cell a, Cell b);
// |a - b| wrapped onto [0, pi].
double angular_distance(double a, double b);
// Wraps into (-pi, pi].
double normalize_angle(double a);

}  // namespace rastar
