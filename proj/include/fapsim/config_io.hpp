#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "fapsim/supply_planner.hpp"

namespace fapsim {

/// Reads `mcs,min_snr_db,rate_mbps` CSV rows (header required).
McsTable parse_mcs_csv(std::istream& in, const std::string& source = "<mcs>");
McsTable load_mcs_table(const std::filesystem::path& path);

/// Planner settings from a JSON document. Missing keys keep their defaults;
/// unknown keys are rejected. A relative `mcs_table` path resolves against
/// `base_dir`.
PlannerConfig config_from_json(const nlohmann::json& doc,
                               const std::filesystem::path& base_dir = {});
PlannerConfig load_config(const std::filesystem::path& path);

/// Full settings as JSON (the MCS table inline).
nlohmann::json config_to_json(const PlannerConfig& config);

}  // namespace fapsim
