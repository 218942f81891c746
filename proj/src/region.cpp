#include "rastar/region.hpp"

#include <stdexcept>

namespace rastar {

SourceKind kind_of(const RegionSource& source) {
  return static_cast<SourceKind>(source.index());
}

const char* to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::kNull: return "null";
    case SourceKind::kFile: return "file";
    case SourceKind::kOracle: return "oracle";
  }
  return "unknown";
}

SourceKind parse_source_kind(const std::string& name) {
  if (name == "null") return SourceKind::kNull;
  if (name == "file") return SourceKind::kFile;
  if (name == "oracle") return SourceKind::kOracle;
  throw std::invalid_argument("unknown region source: " + name);
}

std::string mask_filename(const std::string& scenario_id, std::size_t target_index) {
  return "mask_" + scenario_id + "_" + std::to_string(target_index) + ".pgm";
}

BitGrid rasterize_path(std::span<const Pose> path, int width, int height) {
  std::vector<Cell> cells;
  cells.reserve(path.size());
  for (const Pose& p : path) cells.push_back(p.cell);
  return rasterize_polyline(cells, width, height);
}

RegionMask path_region(std::span<const Pose> path, int width, int height, int radius) {
  return dilate(rasterize_path(path, width, height), radius);
}

namespace {

RegionPrediction oracle_one(const OracleSource& src, const PlanContext& ctx, Cell target) {
  RegionPrediction out;
  try {
    const PlanResult r = plan(ctx.grid, ctx.start, target, ctx.speed, nullptr, src.search, ctx.actions);
    if (r.reached()) out.mask = path_region(r.path, ctx.grid.width(), ctx.grid.height(), src.radius);
  } catch (const PlanError&) {
    // Unplannable target: no region.
  }
  return out;
}

RegionPrediction file_one(const FileSource& src, const PlanContext& ctx, std::size_t index) {
  RegionPrediction out;
  try {
    out.mask = read_pgm(src.directory / mask_filename(src.scenario_id, index), ctx.grid.width(),
                        ctx.grid.height());
  } catch (const RasterError& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::vector<RegionPrediction> predict_batch(const RegionSource& source, const PlanContext& ctx,
                                            std::span<const Cell> targets, bool parallel) {
  for (const Cell& t : targets) {
    if (!ctx.grid.in_bounds(t)) throw std::out_of_range("predict_batch target out of bounds");
  }
  std::vector<RegionPrediction> out(targets.size());
  if (const auto* oracle = std::get_if<OracleSource>(&source)) {
    if (oracle->radius < 1) throw std::invalid_argument("oracle dilation radius must be >= 1");
    const auto n = static_cast<std::ptrdiff_t>(targets.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] = oracle_one(*oracle, ctx, targets[static_cast<std::size_t>(i)]);
    }
  } else if (const auto* file = std::get_if<FileSource>(&source)) {
    for (std::size_t i = 0; i < targets.size(); ++i) out[i] = file_one(*file, ctx, i);
  }
  return out;
}

RgbRaster render_fcn_input(const OccupancyGrid& inflated, const ReferencePath& refpath,
                           Cell target, FcnInputRadii radii) {
  if (!inflated.in_bounds(target)) throw std::out_of_range("render_fcn_input target out of bounds");
  const int w = inflated.width();
  const int h = inflated.height();
  const BitGrid ref = dilate(rasterize_polyline(refpath.cells(), w, h), radii.reference);
  BitGrid tgt(w, h);
  tgt.set(target);
  tgt = dilate(tgt, radii.target);

  RgbRaster out(w, h);
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      const Cell c{col, row};
      out.at(c, 0) = inflated.occupied(c) ? 255 : 0;
      out.at(c, 1) = ref.test(c) ? 255 : 0;
      out.at(c, 2) = tgt.test(c) ? 255 : 0;
    }
  }
  return out;
}

}  // namespace rastar
