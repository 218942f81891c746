#pragma once

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "rastar/grid.hpp"
#include "rastar/multi.hpp"
#include "rastar/region.hpp"
#include "rastar/search.hpp"

namespace rastar {

enum class Layout { kCorridor, kSCurve, kLot };
Layout parse_layout(const std::string& name);
const char* to_string(Layout layout);

struct IntRange {
  int lo = 0;
  int hi = 0;
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

/// Everything needed to build one synthetic scenario. The seed fully
/// determines the result.
struct ScenarioSpec {
  std::string id = "scenario";
  std::uint64_t seed = 1;
  // Seed for random parts of the bare layout (lot blocks). 0 means `seed`.
  std::uint64_t layout_seed = 0;
  Layout layout = Layout::kCorridor;

  int width = 256;
  int height = 512;
  double resolution = 0.2;  // m per cell
  Cell ego{128, 460};
  double ego_heading = std::numbers::pi / 2.0;
  double speed = 5.0;  // m/s, selects the angle limit

  int vehicle_radius = 5;    // obstacle inflation, cells
  int road_half_width = 30;  // corridor and s-curve
  int curve_amplitude = 40;  // s-curve lateral swing, cells
  int curve_period = 400;    // s-curve wavelength, rows
  int lot_blocks = 12;
  int lane_offset = 16;  // parallel lane distance from the reference path

  IntRange vehicle_obstacles{2, 6};
  IntRange refpath_shift{-8, 8};
  // Vehicles parked across the road, centered near the reference path at an
  // arc length inside crossing_stations. Off by default.
  IntRange crossing_vehicles{0, 0};
  IntRange crossing_stations{45, 120};
  int crossing_lateral = 10;  // max |offset| of a crossing vehicle's center, cells

  // Cells that simulated vehicles must stay clear of (besides the ego).
  std::vector<Cell> keep_clear;

  std::uint64_t effective_layout_seed() const { return layout_seed != 0 ? layout_seed : seed; }
  void validate() const;
};

// Center and heading of a simulated 23 x 9 cell vehicle.
struct VehicleObstacle {
  double col = 0.0;
  double row = 0.0;
  double heading = 0.0;
  bool crossing = false;  // parked across the road
};

inline constexpr double kVehicleHalfLength = 11.5;
inline constexpr double kVehicleHalfWidth = 4.5;

std::vector<Cell> vehicle_cells(const VehicleObstacle& v, int width, int height);

struct BareLayout {
  OccupancyGrid grid;
  ReferencePath refpath;
};

/// Bare template: road geometry only, no vehicles, no shift.
BareLayout build_layout(const ScenarioSpec& spec);

struct Scenario {
  std::string id;
  OccupancyGrid raw;
  OccupancyGrid inflated;
  ReferencePath refpath;       // shifted, as seen by the predictor
  ReferencePath base_refpath;  // unshifted, used for target sampling
  int shift = 0;
  std::vector<VehicleObstacle> vehicles;
  Pose start;
  double speed = 0.0;
};

/// Template plus randomly placed vehicles and a lateral reference-path
/// shift. Throws GridError if the ego ends up walled in.
Scenario build_scenario(const ScenarioSpec& spec);

struct SampleGenConfig {
  TargetSamplerConfig sampler{};
  int per_target = 5;
  int label_radius = 5;
  FcnInputRadii radii{};
  SearchConfig search = oracle_search_config();
  bool parallel = true;
};

struct ManifestRow {
  std::string input;  // relative to the output directory
  std::string label;
  std::uint64_t seed = 0;  // variant seed; rebuilds the variant with variant_spec
  Cell target;
  int shift = 0;
};

struct Manifest {
  std::vector<ManifestRow> rows;
  int targets = 0;
  int skipped = 0;  // variants whose plan did not reach the target
};

inline constexpr const char* kManifestHeader = "input,label,seed,target_col,target_row,shift";

std::uint64_t variant_seed(std::uint64_t base_seed, std::size_t target_index, int variant);
/// Spec of one augmented variant: fresh seed, same layout, target kept clear.
ScenarioSpec variant_spec(const ScenarioSpec& base, std::uint64_t seed, Cell target);

/// Targets from the bare layout, per_target augmented variants each, plain
/// plan per variant, dilated path as label. Writes <prefix>_input.ppm,
/// <prefix>_label.pgm and manifest.csv under out_dir.
Manifest generate_samples(const ScenarioSpec& spec, const SampleGenConfig& cfg,
                          const std::filesystem::path& out_dir);

std::string manifest_csv(const Manifest& manifest);
Manifest read_manifest(const std::filesystem::path& path);

}  // namespace rastar
