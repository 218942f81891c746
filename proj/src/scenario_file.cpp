#include "rastar/scenario_file.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "rastar/raster_io.hpp"

namespace rastar {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  if constexpr (std::is_floating_point_v<T>) {
    // from_chars for double is missing on some toolchains; strtod is fine here.
    std::string buf(value);
    char* end = nullptr;
    out = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size()) {
      throw std::invalid_argument("bad number for '" + std::string(key) + "': " + buf);
    }
  } else {
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
      throw std::invalid_argument("bad integer for '" + std::string(key) + "': " + std::string(value));
    }
  }
  return out;
}

}  // namespace

ScenarioSpec parse_scenario(std::string_view text) {
  ScenarioSpec spec;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "id") spec.id = std::string(value);
    else if (key == "seed") spec.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "layout_seed") spec.layout_seed = parse_number<std::uint64_t>(key, value);
    else if (key == "layout") spec.layout = parse_layout(std::string(value));
    else if (key == "width") spec.width = parse_number<int>(key, value);
    else if (key == "height") spec.height = parse_number<int>(key, value);
    else if (key == "resolution") spec.resolution = parse_number<double>(key, value);
    else if (key == "ego_col") spec.ego.col = parse_number<int>(key, value);
    else if (key == "ego_row") spec.ego.row = parse_number<int>(key, value);
    else if (key == "ego_heading") spec.ego_heading = parse_number<double>(key, value);
    else if (key == "speed") spec.speed = parse_number<double>(key, value);
    else if (key == "vehicle_radius") spec.vehicle_radius = parse_number<int>(key, value);
    else if (key == "road_half_width") spec.road_half_width = parse_number<int>(key, value);
    else if (key == "curve_amplitude") spec.curve_amplitude = parse_number<int>(key, value);
    else if (key == "curve_period") spec.curve_period = parse_number<int>(key, value);
    else if (key == "lot_blocks") spec.lot_blocks = parse_number<int>(key, value);
    else if (key == "lane_offset") spec.lane_offset = parse_number<int>(key, value);
    else if (key == "obstacles_min") spec.vehicle_obstacles.lo = parse_number<int>(key, value);
    else if (key == "obstacles_max") spec.vehicle_obstacles.hi = parse_number<int>(key, value);
    else if (key == "crossing_min") spec.crossing_vehicles.lo = parse_number<int>(key, value);
    else if (key == "crossing_max") spec.crossing_vehicles.hi = parse_number<int>(key, value);
    else if (key == "crossing_near") spec.crossing_stations.lo = parse_number<int>(key, value);
    else if (key == "crossing_far") spec.crossing_stations.hi = parse_number<int>(key, value);
    else if (key == "crossing_lateral") spec.crossing_lateral = parse_number<int>(key, value);
    else if (key == "shift_min") spec.refpath_shift.lo = parse_number<int>(key, value);
    else if (key == "shift_max") spec.refpath_shift.hi = parse_number<int>(key, value);
    else throw std::invalid_argument("unknown scenario key: " + std::string(key));
  }
  spec.validate();
  return spec;
}

ScenarioSpec read_scenario_file(const std::filesystem::path& path) {
  return parse_scenario(read_file_bytes(path));
}

std::string format_scenario(const ScenarioSpec& spec) {
  std::ostringstream out;
  char buf[64];
  const auto real = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "id=" << spec.id << '\n'
      << "seed=" << spec.seed << '\n'
      << "layout_seed=" << spec.layout_seed << '\n'
      << "layout=" << to_string(spec.layout) << '\n'
      << "width=" << spec.width << '\n'
      << "height=" << spec.height << '\n'
      << "resolution=" << real(spec.resolution) << '\n'
      << "ego_col=" << spec.ego.col << '\n'
      << "ego_row=" << spec.ego.row << '\n'
      << "ego_heading=" << real(spec.ego_heading) << '\n'
      << "speed=" << real(spec.speed) << '\n'
      << "vehicle_radius=" << spec.vehicle_radius << '\n'
      << "road_half_width=" << spec.road_half_width << '\n'
      << "curve_amplitude=" << spec.curve_amplitude << '\n'
      << "curve_period=" << spec.curve_period << '\n'
      << "lot_blocks=" << spec.lot_blocks << '\n'
      << "lane_offset=" << spec.lane_offset << '\n'
      << "obstacles_min=" << spec.vehicle_obstacles.lo << '\n'
      << "obstacles_max=" << spec.vehicle_obstacles.hi << '\n'
      << "crossing_min=" << spec.crossing_vehicles.lo << '\n'
      << "crossing_max=" << spec.crossing_vehicles.hi << '\n'
      << "crossing_near=" << spec.crossing_stations.lo << '\n'
      << "crossing_far=" << spec.crossing_stations.hi << '\n'
      << "crossing_lateral=" << spec.crossing_lateral << '\n'
      << "shift_min=" << spec.refpath_shift.lo << '\n'
      << "shift_max=" << spec.refpath_shift.hi << '\n';
  return out.str();
}

}  // namespace rastar
