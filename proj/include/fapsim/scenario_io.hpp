#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fapsim/scenario.hpp"

namespace fapsim {

/// Scenario document:
///   {"area": {"width": w, "height": h},
///    "gus": [{"x": .., "y": .., "z": .., "load_mbps": ..}, ...],
///    "grid_res": r, "seed": s}          // grid_res and seed optional
/// Throws ValidationError with line/column for syntax errors and a field path
/// (e.g. "gus[3].load_mbps") for content errors.
Scenario parse_scenario_json(std::string_view text, const std::string& source = "<scenario>");
Scenario parse_scenario_file(const std::filesystem::path& path);

std::string scenario_to_json(const Scenario& scenario);
void write_scenario_file(const Scenario& scenario, const std::filesystem::path& path);

}  // namespace fapsim
