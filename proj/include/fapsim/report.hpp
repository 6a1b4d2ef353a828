#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "fapsim/scenario_engine.hpp"

namespace fapsim {

struct ReportOptions {
  std::vector<UavType> uav_types{UavType::Rotary, UavType::Fixed};
  bool json = true;
  bool csv = true;
  bool svg = true;
};

/// report.json body for a planned scenario.
nlohmann::json run_report_json(const Scenario& scenario, const std::vector<FapPlan>& plans,
                               const PlannerConfig& config, const ReportOptions& options = {});

/// results.csv: one row per (FAP, UAV type, trajectory kind).
std::string run_results_csv(const std::vector<FapPlan>& plans, const ReportOptions& options = {});

/// Grouped bar chart of the selected kJ/h per FAP and UAV type.
std::string energy_svg(const std::vector<FapPlan>& plans, const ReportOptions& options = {});

/// Writes report.json, results.csv and energy.svg (as enabled) into out_dir,
/// creating it if needed. Returns the written paths. Throws IoError.
std::vector<std::filesystem::path> emit_report(const Scenario& scenario,
                                               const std::vector<FapPlan>& plans,
                                               const PlannerConfig& config,
                                               const std::filesystem::path& out_dir,
                                               const ReportOptions& options = {});

nlohmann::json batch_report_json(std::span<const BatchStats> batches);
std::string batch_results_csv(std::span<const BatchStats> batches);
/// Percentile box chart of the percent increase per GU count.
std::string increase_svg(std::span<const BatchStats> batches);

/// Writes report.json, results.csv and increase.svg for batch runs.
std::vector<std::filesystem::path> emit_batch_report(std::span<const BatchStats> batches,
                                                     const std::filesystem::path& out_dir,
                                                     const ReportOptions& options = {});

}  // namespace fapsim
