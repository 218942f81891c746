#include "rastar/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace rastar {

double cell_distance(Cell a, Cell b) {
  return std::hypot(static_cast<double>(a.col - b.col), static_cast<double>(a.row - b.row));
}

BitGrid::BitGrid(int width, int height, bool fill) : width_(width), height_(height) {
  if (width < 0 || height < 0) throw GridError("negative raster dimensions");
  bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
               fill ? 1 : 0);
}

std::size_t BitGrid::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool BitGrid::any() const {
  return std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b != 0; });
}

bool BitGrid::subset_of(const BitGrid& other) const {
  if (!same_shape(other)) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

OccupancyGrid::OccupancyGrid(BitGrid cells, double resolution, Cell ego)
    : cells_(std::move(cells)), resolution_(resolution), ego_(ego) {
  if (cells_.width() < 1 || cells_.height() < 1) throw GridError("empty occupancy grid");
  if (!(resolution_ > 0.0)) throw GridError("resolution must be positive");
  if (!cells_.in_bounds(ego_)) throw GridError("ego cell out of bounds");
  if (cells_.test(ego_)) throw GridError("ego cell is occupied");
}

std::vector<Cell> disk_offsets(int radius) {
  std::vector<Cell> out;
  const long long r2 = static_cast<long long>(radius) * radius;
  for (int dr = -radius; dr <= radius; ++dr) {
    for (int dc = -radius; dc <= radius; ++dc) {
      if (static_cast<long long>(dc) * dc + static_cast<long long>(dr) * dr <= r2) {
        out.push_back({dc, dr});
      }
    }
  }
  return out;
}

BitGrid dilate(const BitGrid& mask, int radius) {
  if (radius < 0) throw GridError("dilation radius must be >= 0");
  if (radius == 0) return mask;

  const int w = mask.width();
  const int h = mask.height();
  const auto in = mask.data();
  // Pass 1: per column, vertical distance to the nearest set bit, capped at
  // radius + 1 (anything farther cannot contribute).
  const int cap = radius + 1;
  std::vector<int> vdist(in.size(), cap);

#pragma omp parallel for schedule(static)
  for (int col = 0; col < w; ++col) {
    int last = -cap;
    for (int row = 0; row < h; ++row) {
      const std::size_t i = static_cast<std::size_t>(row) * w + col;
      if (in[i]) last = row;
      vdist[i] = std::min(cap, row - last);
    }
    last = h + cap;
    for (int row = h - 1; row >= 0; --row) {
      const std::size_t i = static_cast<std::size_t>(row) * w + col;
      if (in[i]) last = row;
      vdist[i] = std::min(vdist[i], std::min(cap, last - row));
    }
  }

  // Pass 2: a cell is covered iff some column within the horizontal radius
  // has dc^2 + vdist^2 <= r^2.
  BitGrid out(w, h);
  auto dst = out.data();
  const long long r2 = static_cast<long long>(radius) * radius;

#pragma omp parallel for schedule(static)
  for (int row = 0; row < h; ++row) {
    const std::size_t base = static_cast<std::size_t>(row) * w;
    for (int col = 0; col < w; ++col) {
      const int lo = std::max(0, col - radius);
      const int hi = std::min(w - 1, col + radius);
      for (int c = lo; c <= hi; ++c) {
        const long long dc = c - col;
        const long long dv = vdist[base + c];
        if (dc * dc + dv * dv <= r2) {
          dst[base + col] = 1;
          break;
        }
      }
    }
  }
  return out;
}

BitGrid dilate_reference(const BitGrid& mask, int radius) {
  if (radius < 0) throw GridError("dilation radius must be >= 0");
  BitGrid out(mask.width(), mask.height());
  const auto disk = disk_offsets(radius);
  for (int row = 0; row < mask.height(); ++row) {
    for (int col = 0; col < mask.width(); ++col) {
      if (!mask.test({col, row})) continue;
      for (const Cell& d : disk) {
        const Cell c{col + d.col, row + d.row};
        if (out.in_bounds(c)) out.set(c);
      }
    }
  }
  return out;
}

OccupancyGrid inflate(const OccupancyGrid& grid, int vehicle_radius) {
  BitGrid cells = dilate(grid.cells(), vehicle_radius);
  if (cells.test(grid.ego())) throw GridError("ego cell is occupied after inflation");
  return OccupancyGrid(std::move(cells), grid.resolution(), grid.ego());
}

std::optional<Cell> trace_line(const BitGrid& cells, Cell from, Cell to) {
  if (!cells.in_bounds(from) || !cells.in_bounds(to)) {
    throw std::out_of_range("trace_line endpoint outside the grid");
  }
  std::optional<Cell> hit;
  walk_line(from, to, [&](Cell c) {
    if (cells.test(c)) {
      hit = c;
      return false;
    }
    return true;
  });
  return hit;
}

std::optional<Cell> trace_line(const OccupancyGrid& grid, Cell from, Cell to) {
  return trace_line(grid.cells(), from, to);
}

BitGrid rasterize_polyline(std::span<const Cell> points, int width, int height) {
  BitGrid out(width, height);
  if (points.size() == 1 && out.in_bounds(points[0])) out.set(points[0]);
  for (std::size_t i = 1; i < points.size(); ++i) {
    walk_line(points[i - 1], points[i], [&](Cell c) {
      if (out.in_bounds(c)) out.set(c);
      return true;
    });
  }
  return out;
}

double normalize_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(a, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  if (r > std::numbers::pi) r -= two_pi;
  return r;
}

double angular_distance(double a, double b) {
  return std::abs(std::remainder(a - b, 2.0 * std::numbers::pi));
}

double heading_between(Cell a, Cell b) {
  return std::atan2(static_cast<double>(a.row - b.row), static_cast<double>(b.col - a.col));
}

ReferencePath::ReferencePath(std::vector<Pose> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw GridError("reference path needs at least two points");
  cumulative_.reserve(points_.size());
  cumulative_.push_back(0.0);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const Cell a = points_[i - 1].cell;
    const Cell b = points_[i].cell;
    if (a != b && angular_distance(points_[i - 1].heading, heading_between(a, b)) >
                      std::numbers::pi / 2.0 + 1e-9) {
      throw GridError("reference path heading disagrees with point order at index " +
                      std::to_string(i - 1));
    }
    cumulative_.push_back(cumulative_.back() + cell_distance(a, b));
  }
}

std::vector<Cell> ReferencePath::cells() const {
  std::vector<Cell> out;
  out.reserve(points_.size());
  for (const Pose& p : points_) out.push_back(p.cell);
  return out;
}

Station ReferencePath::station_at(double s) const {
  s = std::clamp(s, 0.0, length());
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  std::size_t seg = it == cumulative_.end() ? points_.size() - 1
                                            : static_cast<std::size_t>(it - cumulative_.begin());
  seg = std::clamp<std::size_t>(seg, 1, points_.size() - 1);
  // Skip zero-length segments when picking the heading.
  std::size_t hseg = seg;
  while (hseg < points_.size() - 1 && points_[hseg - 1].cell == points_[hseg].cell) ++hseg;

  const Cell a = points_[seg - 1].cell;
  const Cell b = points_[seg].cell;
  const double span = cumulative_[seg] - cumulative_[seg - 1];
  const double t = span > 0.0 ? (s - cumulative_[seg - 1]) / span : 0.0;
  Station st;
  st.col = a.col + t * (b.col - a.col);
  st.row = a.row + t * (b.row - a.row);
  st.heading = points_[hseg - 1].cell == points_[hseg].cell
                   ? points_[hseg - 1].heading
                   : heading_between(points_[hseg - 1].cell, points_[hseg].cell);
  return st;
}

}  // namespace rastar
