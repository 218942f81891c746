#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rastar/datagen.hpp"

namespace rastar {

// Flat key=value scenario files. Blank lines and lines starting with '#'
// are ignored; unknown keys are an error. Missing keys keep their defaults.
//
//   id=corridor_7        seed=7            layout_seed=0
//   layout=corridor      width=256         height=512
//   resolution=0.2       ego_col=128       ego_row=460
//   ego_heading=1.5708   speed=5           vehicle_radius=5
//   road_half_width=30   curve_amplitude=40 curve_period=400
//   lot_blocks=12        lane_offset=16
//   obstacles_min=2      obstacles_max=6   shift_min=-8   shift_max=8
//   crossing_min=0       crossing_max=0    crossing_near=45 crossing_far=120
//   crossing_lateral=10

ScenarioSpec parse_scenario(std::string_view text);
ScenarioSpec read_scenario_file(const std::filesystem::path& path);
std::string format_scenario(const ScenarioSpec& spec);

}  // namespace rastar
