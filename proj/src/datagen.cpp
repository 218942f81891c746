#include "rastar/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rastar/raster_io.hpp"

namespace rastar {

Layout parse_layout(const std::string& name) {
  if (name == "corridor") return Layout::kCorridor;
  if (name == "s-curve" || name == "scurve") return Layout::kSCurve;
  if (name == "lot") return Layout::kLot;
  throw std::invalid_argument("unknown layout: " + name);
}

const char* to_string(Layout layout) {
  switch (layout) {
    case Layout::kCorridor: return "corridor";
    case Layout::kSCurve: return "s-curve";
    case Layout::kLot: return "lot";
  }
  return "unknown";
}

void ScenarioSpec::validate() const {
  if (width < 1 || height < 1) throw std::invalid_argument("scenario dimensions must be positive");
  if (vehicle_obstacles.lo < 0 || vehicle_obstacles.lo > vehicle_obstacles.hi) {
    throw std::invalid_argument("vehicle_obstacles range is empty");
  }
  if (crossing_vehicles.lo < 0 || crossing_vehicles.lo > crossing_vehicles.hi) {
    throw std::invalid_argument("crossing_vehicles range is empty");
  }
  if (crossing_stations.lo < 0 || crossing_stations.lo > crossing_stations.hi) {
    throw std::invalid_argument("crossing_stations range is empty");
  }
  if (crossing_lateral < 0) throw std::invalid_argument("crossing_lateral must be >= 0");
  if (refpath_shift.lo > refpath_shift.hi) throw std::invalid_argument("refpath_shift range is empty");
  if (vehicle_radius < 0) throw std::invalid_argument("vehicle_radius must be >= 0");
  if (curve_period < 1) throw std::invalid_argument("curve_period must be >= 1");
  if (speed < 0.0) throw std::invalid_argument("speed must be >= 0");
}

namespace {

constexpr int kRefStep = 8;     // rows between reference path points
constexpr int kTopMargin = 8;   // reference path stops this far from the top
constexpr int kLotEgoClearance = 30;
constexpr double kMinVehicleStation = 45.0;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent streams per purpose so adding vehicles never perturbs the shift.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t purpose) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(purpose)));
}

double curve_center(const ScenarioSpec& spec, int row) {
  if (spec.layout != Layout::kSCurve || row >= spec.ego.row) return spec.ego.col;
  const double t = static_cast<double>(spec.ego.row - row) / spec.curve_period;
  return spec.ego.col + spec.curve_amplitude * std::sin(2.0 * std::numbers::pi * t);
}

ReferencePath centerline(const ScenarioSpec& spec) {
  std::vector<Cell> cells;
  for (int row = spec.ego.row; row >= kTopMargin; row -= kRefStep) {
    cells.push_back({static_cast<int>(std::lround(curve_center(spec, row))), row});
  }
  if (cells.back().row != kTopMargin && spec.ego.row > kTopMargin) {
    cells.push_back({static_cast<int>(std::lround(curve_center(spec, kTopMargin))), kTopMargin});
  }
  if (cells.size() < 2) throw std::invalid_argument("grid too short for a reference path");
  std::vector<Pose> pts;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::size_t j = i + 1 < cells.size() ? i : i - 1;
    pts.push_back({cells[i], heading_between(cells[j], cells[j + 1])});
  }
  return ReferencePath(std::move(pts));
}

double rect_distance(Cell c, int c0, int r0, int c1, int r1) {
  const int dc = std::max({c0 - c.col, 0, c.col - c1});
  const int dr = std::max({r0 - c.row, 0, c.row - r1});
  return std::hypot(dc, dr);
}

bool near_any(const std::vector<Cell>& cells, Cell p, double radius) {
  return std::any_of(cells.begin(), cells.end(),
                     [&](Cell c) { return cell_distance(c, p) <= radius; });
}

}  // namespace

std::vector<Cell> vehicle_cells(const VehicleObstacle& v, int width, int height) {
  std::vector<Cell> out;
  const double dir_c = std::cos(v.heading);
  const double dir_r = -std::sin(v.heading);
  const double left_c = -std::sin(v.heading);
  const double left_r = -std::cos(v.heading);
  const int reach = static_cast<int>(std::ceil(std::hypot(kVehicleHalfLength, kVehicleHalfWidth)));
  const int cc = static_cast<int>(std::lround(v.col));
  const int cr = static_cast<int>(std::lround(v.row));
  for (int row = std::max(0, cr - reach); row <= std::min(height - 1, cr + reach); ++row) {
    for (int col = std::max(0, cc - reach); col <= std::min(width - 1, cc + reach); ++col) {
      const double pc = col - v.col;
      const double pr = row - v.row;
      const double u = pc * dir_c + pr * dir_r;
      const double s = pc * left_c + pr * left_r;
      if (std::abs(u) < kVehicleHalfLength && std::abs(s) < kVehicleHalfWidth) {
        out.push_back({col, row});
      }
    }
  }
  return out;
}

BareLayout build_layout(const ScenarioSpec& spec) {
  spec.validate();
  BitGrid cells(spec.width, spec.height);
  switch (spec.layout) {
    case Layout::kCorridor:
    case Layout::kSCurve:
      for (int row = 0; row < spec.height; ++row) {
        const double center = curve_center(spec, row);
        for (int col = 0; col < spec.width; ++col) {
          if (std::abs(col - center) > spec.road_half_width) cells.set({col, row});
        }
      }
      break;
    case Layout::kLot: {
      auto rng = stream(spec.effective_layout_seed(), 1);
      std::uniform_int_distribution<int> size(8, 24);
      std::uniform_int_distribution<int> cx(0, spec.width - 1);
      std::uniform_int_distribution<int> cy(0, spec.height - 1);
      int placed = 0;
      for (int attempt = 0; placed < spec.lot_blocks && attempt < spec.lot_blocks * 20; ++attempt) {
        const int bw = size(rng);
        const int bh = size(rng);
        const int c0 = cx(rng);
        const int r0 = cy(rng);
        const int c1 = std::min(spec.width - 1, c0 + bw - 1);
        const int r1 = std::min(spec.height - 1, r0 + bh - 1);
        if (rect_distance(spec.ego, c0, r0, c1, r1) <= kLotEgoClearance) continue;
        for (int row = r0; row <= r1; ++row) {
          for (int col = c0; col <= c1; ++col) cells.set({col, row});
        }
        ++placed;
      }
      break;
    }
  }
  return BareLayout{OccupancyGrid(std::move(cells), spec.resolution, spec.ego), centerline(spec)};
}

Scenario build_scenario(const ScenarioSpec& spec) {
  BareLayout bare = build_layout(spec);
  BitGrid cells = bare.grid.cells();
  const ReferencePath& base = bare.refpath;

  std::vector<Cell> clear = spec.keep_clear;
  clear.push_back(spec.ego);
  const double clearance = spec.vehicle_radius + 2.0;

  std::vector<VehicleObstacle> vehicles;
  {
    auto rng = stream(spec.seed, 2);
    std::uniform_int_distribution<int> count_dist(spec.vehicle_obstacles.lo, spec.vehicle_obstacles.hi);
    const int wanted = count_dist(rng);
    const double s_hi = std::max(kMinVehicleStation, base.length() - 10.0);
    std::uniform_real_distribution<double> station(kMinVehicleStation, s_hi);
    std::uniform_int_distribution<int> lane(-1, 1);
    std::uniform_real_distribution<double> jitter(-2.0, 2.0);
    std::uniform_real_distribution<double> yaw(-0.15, 0.15);
    for (int attempt = 0; static_cast<int>(vehicles.size()) < wanted && attempt < wanted * 20;
         ++attempt) {
      const Station st = base.station_at(station(rng));
      const int lane_index = lane(rng);
      const double lateral = lane_index * spec.lane_offset + jitter(rng);
      const double turn = yaw(rng);
      VehicleObstacle v;
      v.col = st.col - lateral * std::sin(st.heading);
      v.row = st.row - lateral * std::cos(st.heading);
      v.heading = st.heading + turn;
      const auto footprint = vehicle_cells(v, spec.width, spec.height);
      const bool blocks_clear = std::any_of(footprint.begin(), footprint.end(),
                                            [&](Cell c) { return near_any(clear, c, clearance); });
      if (footprint.empty() || blocks_clear) continue;
      for (const Cell& c : footprint) cells.set(c);
      vehicles.push_back(v);
    }
  }

  {
    // Own stream, so turning crossings on leaves the other draws unchanged.
    auto rng = stream(spec.seed, 4);
    std::uniform_int_distribution<int> count_dist(spec.crossing_vehicles.lo, spec.crossing_vehicles.hi);
    const int wanted = count_dist(rng);
    const double s_hi = std::min<double>(spec.crossing_stations.hi, base.length());
    const double s_lo = std::min<double>(spec.crossing_stations.lo, s_hi);
    std::uniform_real_distribution<double> station(s_lo, s_hi);
    std::uniform_real_distribution<double> lateral_dist(-spec.crossing_lateral, spec.crossing_lateral);
    std::uniform_real_distribution<double> yaw(-0.3, 0.3);
    int placed = 0;
    for (int attempt = 0; placed < wanted && attempt < wanted * 20; ++attempt) {
      const Station st = base.station_at(station(rng));
      const double lateral = lateral_dist(rng);
      const double turn = yaw(rng);
      VehicleObstacle v;
      v.col = st.col - lateral * std::sin(st.heading);
      v.row = st.row - lateral * std::cos(st.heading);
      v.heading = st.heading + std::numbers::pi / 2.0 + turn;
      v.crossing = true;
      const auto footprint = vehicle_cells(v, spec.width, spec.height);
      const bool blocks_clear = std::any_of(footprint.begin(), footprint.end(),
                                            [&](Cell c) { return near_any(clear, c, clearance); });
      if (footprint.empty() || blocks_clear) continue;
      for (const Cell& c : footprint) cells.set(c);
      vehicles.push_back(v);
      ++placed;
    }
  }

  int shift = 0;
  {
    auto rng = stream(spec.seed, 3);
    std::uniform_int_distribution<int> shift_dist(spec.refpath_shift.lo, spec.refpath_shift.hi);
    shift = shift_dist(rng);
  }
  std::vector<Pose> shifted;
  for (const Pose& p : base.points()) {
    const int col = static_cast<int>(std::lround(p.cell.col - shift * std::sin(p.heading)));
    const int row = static_cast<int>(std::lround(p.cell.row - shift * std::cos(p.heading)));
    shifted.push_back({{std::clamp(col, 0, spec.width - 1), std::clamp(row, 0, spec.height - 1)},
                       p.heading});
  }

  OccupancyGrid raw(std::move(cells), spec.resolution, spec.ego);
  OccupancyGrid inflated = inflate(raw, spec.vehicle_radius);
  return Scenario{spec.id,
                  std::move(raw),
                  std::move(inflated),
                  ReferencePath(std::move(shifted)),
                  base,
                  shift,
                  std::move(vehicles),
                  Pose{spec.ego, spec.ego_heading},
                  spec.speed};
}

std::uint64_t variant_seed(std::uint64_t base_seed, std::size_t target_index, int variant) {
  return splitmix64(base_seed ^ splitmix64(0x5a17ULL + target_index * 1000003ULL +
                                           static_cast<std::uint64_t>(variant)));
}

ScenarioSpec variant_spec(const ScenarioSpec& base, std::uint64_t seed, Cell target) {
  ScenarioSpec v = base;
  v.layout_seed = base.effective_layout_seed();
  v.seed = seed;
  v.keep_clear.push_back(target);
  return v;
}

namespace {

void require_writable(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (ec || !out || !(out << "ok")) {
      throw std::runtime_error("output directory is not writable: " + dir.string());
    }
  }
  std::filesystem::remove(probe, ec);
}

struct VariantOutcome {
  bool reached = false;
  ManifestRow row;
  std::string write_error;
};

}  // namespace

Manifest generate_samples(const ScenarioSpec& spec, const SampleGenConfig& cfg,
                          const std::filesystem::path& out_dir) {
  if (cfg.per_target < 1) throw std::invalid_argument("per_target must be >= 1");
  require_writable(out_dir);

  ScenarioSpec bare_spec = spec;
  bare_spec.vehicle_obstacles = {0, 0};
  bare_spec.crossing_vehicles = {0, 0};
  bare_spec.refpath_shift = {0, 0};
  const Scenario bare = build_scenario(bare_spec);
  const std::vector<Cell> targets = sample_targets(bare.inflated, bare.base_refpath, cfg.sampler);
  const ActionSet actions = ActionSet::build();

  const std::size_t jobs = targets.size() * static_cast<std::size_t>(cfg.per_target);
  std::vector<VariantOutcome> outcomes(jobs);
  const auto run_variant = [&](std::size_t j) {
    const std::size_t t = j / static_cast<std::size_t>(cfg.per_target);
    const int v = static_cast<int>(j % static_cast<std::size_t>(cfg.per_target));
    const Cell target = targets[t];
    const std::uint64_t seed = variant_seed(spec.seed, t, v);
    VariantOutcome out;
    PlanResult r;
    std::optional<Scenario> sc;
    try {
      sc.emplace(build_scenario(variant_spec(spec, seed, target)));
      r = plan(sc->inflated, sc->start, target, sc->speed, nullptr, cfg.search, actions);
    } catch (const std::exception&) {
      return out;  // unplannable variant, counted as skipped
    }
    if (!r.reached()) return out;

    const std::string prefix = spec.id + "_t" + std::to_string(t) + "_v" + std::to_string(v);
    out.reached = true;
    out.row = ManifestRow{prefix + "_input.ppm", prefix + "_label.pgm", seed, target, sc->shift};
    try {
      write_ppm(render_fcn_input(sc->inflated, sc->refpath, target, cfg.radii), out_dir / out.row.input);
      write_pgm(path_region(r.path, sc->inflated.width(), sc->inflated.height(), cfg.label_radius),
                out_dir / out.row.label);
    } catch (const std::exception& e) {
      out.write_error = e.what();
    }
    return out;
  };

  const auto n = static_cast<std::ptrdiff_t>(jobs);
#pragma omp parallel for schedule(dynamic, 1) if (cfg.parallel)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    outcomes[static_cast<std::size_t>(j)] = run_variant(static_cast<std::size_t>(j));
  }
  for (const VariantOutcome& o : outcomes) {
    if (!o.write_error.empty()) throw std::runtime_error(o.write_error);
  }

  Manifest manifest;
  manifest.targets = static_cast<int>(targets.size());
  for (const VariantOutcome& o : outcomes) {
    if (o.reached) {
      manifest.rows.push_back(o.row);
    } else {
      ++manifest.skipped;
    }
  }
  write_file_bytes(out_dir / "manifest.csv", manifest_csv(manifest));
  return manifest;
}

std::string manifest_csv(const Manifest& manifest) {
  std::ostringstream out;
  out << kManifestHeader << '\n';
  for (const ManifestRow& r : manifest.rows) {
    out << r.input << ',' << r.label << ',' << r.seed << ',' << r.target.col << ','
        << r.target.row << ',' << r.shift << '\n';
  }
  return out.str();
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::istringstream in(read_file_bytes(path));
  std::string line;
  if (!std::getline(in, line) || line != kManifestHeader) {
    throw std::runtime_error("bad manifest header in " + path.string());
  }
  Manifest m;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string input, label, seed, col, row, shift;
    if (!std::getline(fields, input, ',') || !std::getline(fields, label, ',') ||
        !std::getline(fields, seed, ',') || !std::getline(fields, col, ',') ||
        !std::getline(fields, row, ',') || !std::getline(fields, shift, ',')) {
      throw std::runtime_error("malformed manifest row: " + line);
    }
    m.rows.push_back({input, label, std::stoull(seed), {std::stoi(col), std::stoi(row)}, std::stoi(shift)});
  }
  return m;
}

}  // namespace rastar
