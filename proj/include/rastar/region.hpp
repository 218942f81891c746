#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rastar/actions.hpp"
#include "rastar/grid.hpp"
#include "rastar/raster_io.hpp"
#include "rastar/search.hpp"

namespace rastar {

// Where path-region masks come from. The learned predictor lives outside
// this library; its masks arrive through FileSource.

struct NullSource {};

struct FileSource {
  std::filesystem::path directory;
  std::string scenario_id;
};

// Generous time limit so oracle masks do not depend on machine load.
inline SearchConfig oracle_search_config() {
  SearchConfig cfg;
  cfg.time_limit_ms = 10000.0;
  return cfg;
}

/// Plans each target with the plain planner and dilates the path. Acts as a
/// perfect predictor and as the label generator.
struct OracleSource {
  int radius = 5;
  SearchConfig search = oracle_search_config();
};

using RegionSource = std::variant<NullSource, FileSource, OracleSource>;

enum class SourceKind { kNull, kFile, kOracle };
SourceKind kind_of(const RegionSource& source);
const char* to_string(SourceKind kind);
SourceKind parse_source_kind(const std::string& name);

// Everything the oracle needs to plan from the vehicle.
struct PlanContext {
  const OccupancyGrid& grid;  // inflated
  Pose start;
  double speed = 0.0;
  const ActionSet& actions;
};

struct RegionPrediction {
  std::optional<RegionMask> mask;
  std::string error;  // file source only; empty when fine
};

/// mask_{scenario_id}_{target_index}.pgm
std::string mask_filename(const std::string& scenario_id, std::size_t target_index);

/// One entry per target, index-aligned. Oracle targets are planned
/// concurrently when `parallel` is set; output order does not depend on it.
std::vector<RegionPrediction> predict_batch(const RegionSource& source, const PlanContext& ctx,
                                            std::span<const Cell> targets, bool parallel = true);

/// Path cells (poses joined by straight segments) dilated by radius.
RegionMask path_region(std::span<const Pose> path, int width, int height, int radius);
BitGrid rasterize_path(std::span<const Pose> path, int width, int height);

struct FcnInputRadii {
  int reference = 3;
  int target = 4;
};

/// Three-channel network input: obstacles (R), dilated reference path (G),
/// target disk (B), each 0 or 255.
RgbRaster render_fcn_input(const OccupancyGrid& inflated, const ReferencePath& refpath,
                           Cell target, FcnInputRadii radii = {});

}  // namespace rastar
