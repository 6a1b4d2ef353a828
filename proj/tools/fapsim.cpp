#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "fapsim/config_io.hpp"
#include "fapsim/errors.hpp"
#include "fapsim/report.hpp"
#include "fapsim/scenario_engine.hpp"
#include "fapsim/scenario_io.hpp"
#include "fapsim/trace.hpp"

namespace {

using namespace fapsim;
namespace fs = std::filesystem;

constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;

struct Globals {
  std::string config_path;
  std::string mcs_path;
  std::optional<double> grid_res;
};

PlannerConfig load_planner_config(const Globals& g) {
  PlannerConfig config = g.config_path.empty() ? PlannerConfig{} : load_config(g.config_path);
  if (!g.mcs_path.empty()) config.mcs = load_mcs_table(g.mcs_path);
  config.validate();
  return config;
}

Scenario load_scenario(const std::string& path, const Globals& g) {
  Scenario s = parse_scenario_file(path);
  if (g.grid_res) {
    s.grid_res = *g.grid_res;
    s.validate();
  }
  return s;
}

UavType parse_uav(const std::string& text) {
  if (text == "rotary") return UavType::Rotary;
  if (text == "fixed") return UavType::Fixed;
  throw ValidationError(fmt::format("unknown UAV type '{}' (rotary or fixed)", text));
}

std::vector<UavType> parse_uav_selection(const std::string& text) {
  if (text == "both") return {UavType::Rotary, UavType::Fixed};
  return {parse_uav(text)};
}

TurnRadius parse_radius(const std::string& text) {
  if (text == "inf" || text == "infinity") return TurnRadius::straight();
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  double value = 0.0;
  if (!(in >> value) || !in.eof()) {
    throw ValidationError(fmt::format("--radius expects meters or 'inf', got '{}'", text));
  }
  return TurnRadius::of(value);
}

std::string fixed6(double x) { return fmt::format("{:.6f}", x); }

int cmd_model(const Globals& g, const std::string& uav, const std::string& radius_text,
              std::optional<double> speed) {
  const PlannerConfig config = load_planner_config(g);
  const UavType type = parse_uav(uav);
  const TurnRadius radius = parse_radius(radius_text);
  const UavModel model = type == UavType::Rotary ? UavModel(config.rotary) : UavModel(config.fixed);
  const std::string radius_field =
      radius.is_straight() ? "\"inf\"" : fixed6(radius.meters());

  if (speed) {
    const double p = propulsion_power(model, *speed, radius);
    std::cout << fmt::format(
        "{{\"uav\": \"{}\", \"radius_m\": {}, \"speed_mps\": {}, \"power_w\": {}, "
        "\"energy_kj_per_hour\": {}}}\n",
        to_string(type), radius_field, fixed6(*speed), fixed6(p), fixed6(p * 3.6));
    return 0;
  }
  const SpeedOptimum opt = optimal_speed(model, radius, config.speeds);
  std::cout << fmt::format(
      "{{\"uav\": \"{}\", \"radius_m\": {}, \"v_opt_mps\": {}, \"p_min_w\": {}, "
      "\"energy_kj_per_hour\": {}}}\n",
      to_string(type), radius_field, fixed6(opt.speed), fixed6(opt.power),
      fixed6(opt.power * 3.6));
  return 0;
}

int cmd_run(const Globals& g, const std::string& scenario_path, const std::string& uav,
            const std::string& out_dir) {
  const PlannerConfig config = load_planner_config(g);
  const Scenario scenario = load_scenario(scenario_path, g);
  ReportOptions options;
  options.uav_types = parse_uav_selection(uav);

  const auto plans = plan(scenario, config);
  emit_report(scenario, plans, config, out_dir, options);

  for (std::size_t k = 0; k < plans.size(); ++k) {
    std::string line = fmt::format("FAP {}: {} GU(s), r_c = {:.2f} m", k, plans[k].group.size(),
                                   plans[k].circular_radius);
    for (const auto type : options.uav_types) {
      const auto& sel = plans[k].selection(type);
      line += sel.feasible() ? fmt::format(", {} {} {:.1f} kJ/h", to_string(type),
                                           to_string(sel.kind), sel.energy_per_hour / 1000.0)
                             : fmt::format(", {} infeasible", to_string(type));
    }
    std::cout << line << "\n";
  }
  std::cout << "reports written to " << out_dir << "\n";
  return 0;
}

int cmd_batch(const Globals& g, const std::vector<std::size_t>& gus, std::size_t count,
              std::uint64_t seed, const std::string& out_dir, std::size_t workers,
              double load_min, double load_max) {
  const PlannerConfig config = load_planner_config(g);
  if (!(load_min >= 0.0) || !(load_max >= load_min)) {
    throw ValidationError(fmt::format("load range [{}, {}] is invalid", load_min, load_max));
  }
  std::vector<BatchStats> batches;
  for (const std::size_t n : gus) {
    BatchOptions options;
    options.gu_count = n;
    options.scenario_count = count;
    options.seed = seed;
    options.loads = {load_min, load_max};
    options.grid_res = g.grid_res.value_or(1.0);
    options.workers = workers;
    batches.push_back(run_batch(options, config));
    const auto& b = batches.back();
    std::cout << fmt::format("{} GUs: {} both feasible, {} fixed-wing infeasible ({:.1f}%), {} excluded",
                             n, b.feasible_count, b.infeasible_fixed_count,
                             100.0 * b.infeasible_rate(), b.excluded_count);
    if (b.percentiles) std::cout << fmt::format(", median increase {:.1f}%", b.percentiles->p50);
    std::cout << "\n";
  }
  emit_batch_report(batches, out_dir);
  std::cout << "reports written to " << out_dir << "\n";
  return 0;
}

int cmd_trace(const Globals& g, const std::string& scenario_path, const std::string& uav,
              std::size_t fap_index, double duration, double dt, const std::string& out_path) {
  const PlannerConfig config = load_planner_config(g);
  const Scenario scenario = load_scenario(scenario_path, g);
  const UavType type = parse_uav(uav);
  const auto plans = plan(scenario, config);
  if (fap_index >= plans.size()) {
    throw ValidationError(
        fmt::format("--fap {} out of range, the plan has {} FAP(s)", fap_index, plans.size()));
  }
  if (out_path.empty()) {
    emit_trace(plans[fap_index], type, duration, dt, config.fap_altitude, std::cout);
    return 0;
  }
  // Render first so an infeasible selection leaves no partial file behind.
  std::ostringstream buffer;
  emit_trace(plans[fap_index], type, duration, dt, config.fap_altitude, buffer);
  const fs::path path(out_path);
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!(out << buffer.str())) throw IoError(fmt::format("cannot write '{}'", out_path));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flying access point placement and UAV propulsion energy simulator"};
  app.require_subcommand(1);

  Globals g;
  app.add_option("--config", g.config_path, "Planner configuration JSON")->check(CLI::ExistingFile);
  app.add_option("--mcs-table", g.mcs_path, "MCS table CSV (mcs,min_snr_db,rate_mbps)")
      ->check(CLI::ExistingFile);
  double grid_res = 0.0;
  auto* grid_opt = app.add_option("--grid-res", grid_res, "Placement grid resolution [m]")
                       ->check(CLI::PositiveNumber);

  std::string uav;
  std::string scenario_path;
  std::string out_dir;

  auto* model = app.add_subcommand("model", "Propulsion power for one UAV type and turn radius");
  std::string radius_text;
  double speed = 0.0;
  model->add_option("--uav", uav, "rotary or fixed")->required()->check(CLI::IsMember({"rotary", "fixed"}));
  model->add_option("--radius", radius_text, "Turn radius [m] or 'inf'")->required();
  auto* speed_opt = model->add_option("--speed", speed, "Evaluate at this speed [m/s] instead of optimizing")
                        ->check(CLI::NonNegativeNumber);

  auto* run = app.add_subcommand("run", "Plan a scenario and write reports");
  std::string run_uav = "both";
  run->add_option("--scenario", scenario_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--uav", run_uav, "both, rotary or fixed")
      ->check(CLI::IsMember({"both", "rotary", "fixed"}));
  run->add_option("--out", out_dir, "Output directory")->required();

  auto* batch = app.add_subcommand("batch", "Random-scenario batch comparison");
  std::vector<std::size_t> gus;
  std::size_t count = 200;
  std::uint64_t seed = 1;
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  double load_min = 0.0;
  double load_max = 500.0;
  batch->add_option("--gus", gus, "GU count(s), comma separated")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  batch->add_option("--count", count, "Scenarios per GU count")->check(CLI::PositiveNumber);
  batch->add_option("--seed", seed, "Master seed");
  batch->add_option("--out", out_dir, "Output directory")->required();
  batch->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  batch->add_option("--load-min", load_min, "Lowest offered load [Mbit/s]");
  batch->add_option("--load-max", load_max, "Highest offered load [Mbit/s]");

  auto* trace = app.add_subcommand("trace", "Sample the selected trajectory of one FAP over time");
  std::size_t fap_index = 0;
  double duration = 0.0;
  double dt = 0.1;
  std::string trace_out;
  trace->add_option("--scenario", scenario_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
  trace->add_option("--uav", uav, "rotary or fixed")->required()->check(CLI::IsMember({"rotary", "fixed"}));
  trace->add_option("--fap", fap_index, "FAP index")->required();
  trace->add_option("--duration", duration, "Duration [s]")->required()->check(CLI::NonNegativeNumber);
  trace->add_option("--dt", dt, "Sample step [s]")->check(CLI::PositiveNumber);
  trace->add_option("--out", trace_out, "CSV file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }
  if (*grid_opt) g.grid_res = grid_res;

  try {
    if (*model) {
      return cmd_model(g, uav, radius_text,
                       *speed_opt ? std::optional<double>(speed) : std::nullopt);
    }
    if (*run) return cmd_run(g, scenario_path, run_uav, out_dir);
    if (*batch) return cmd_batch(g, gus, count, seed, out_dir, workers, load_min, load_max);
    if (*trace) return cmd_trace(g, scenario_path, uav, fap_index, duration, dt, trace_out);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
