#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fapsim/scenario.hpp"
#include "fapsim/supply_planner.hpp"

namespace fapsim {

/// The three reference scenarios (2, 5 and 10 GUs).
std::vector<Scenario> reference_scenarios();

struct LoadRange {
  double lower = 0.0;    // [Mbit/s]
  double upper = 500.0;  // [Mbit/s]
};

/// Per-scenario random stream: SplitMix64 expands (master_seed, index) into
/// the seed of an mt19937_64; doubles take the top 53 bits of each draw.
class ScenarioRng {
 public:
  ScenarioRng(std::uint64_t master_seed, std::uint64_t index);

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lower, double upper) { return lower + (upper - lower) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t& state);

/// n GUs uniform over width × height at ground level, loads uniform over
/// `loads`. Deterministic in (n, master_seed, index).
Scenario generate_random(std::size_t n, std::uint64_t master_seed, std::uint64_t index = 0,
                         LoadRange loads = {}, double width = 100.0, double height = 100.0);

enum class OutcomeStatus { BothFeasible, FixedInfeasible, Excluded };

const char* to_string(OutcomeStatus status);

struct ScenarioOutcome {
  std::uint64_t index = 0;
  std::size_t fap_count = 0;
  OutcomeStatus status = OutcomeStatus::Excluded;
  double rotary_energy_per_hour = 0.0;  // [J], summed over FAPs
  double fixed_energy_per_hour = 0.0;   // [J]; 0 unless BothFeasible
  std::optional<double> percent_increase;
  std::string note;
};

/// Plans one scenario for both UAV types and compares summed FAP energies.
ScenarioOutcome evaluate_scenario(const Scenario& scenario, const PlannerConfig& config,
                                  std::uint64_t index = 0);

struct Percentiles {
  double p5, p25, p50, p75, p95;
};

/// Linear-interpolation percentile (q in [0, 100]) of unsorted samples.
double percentile(std::vector<double> samples, double q);

struct BatchStats {
  std::size_t gu_count = 0;
  std::size_t scenario_count = 0;
  std::uint64_t seed = 0;
  std::size_t feasible_count = 0;  // both UAV types feasible
  std::size_t infeasible_fixed_count = 0;
  std::size_t excluded_count = 0;  // not even rotary-plannable
  std::vector<double> percent_increase;  // BothFeasible scenarios, in index order
  std::optional<Percentiles> percentiles;
  std::vector<ScenarioOutcome> outcomes;

  /// Fixed-wing infeasible share of the plannable scenarios, in [0, 1].
  double infeasible_rate() const;
};

struct BatchOptions {
  std::size_t gu_count = 2;
  std::size_t scenario_count = 200;
  std::uint64_t seed = 1;
  LoadRange loads;
  double grid_res = 1.0;
  std::size_t workers = 1;
};

/// Scenario i is generated from (seed, i) alone, so results do not depend on
/// the worker count or scheduling.
BatchStats run_batch(const BatchOptions& options, const PlannerConfig& config);

}  // namespace fapsim
