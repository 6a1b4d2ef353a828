#include "fapsim/scenario_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <fmt/format.h>

namespace fapsim {

void Scenario::validate() const {
  if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height)) {
    throw ValidationError(fmt::format("area must be positive, got {} x {}", width, height));
  }
  if (!(grid_res > 0.0) || !std::isfinite(grid_res)) {
    throw ValidationError(fmt::format("grid_res must be positive, got {}", grid_res));
  }
  if (gus.empty()) throw ValidationError("scenario has no ground users");
  for (std::size_t i = 0; i < gus.size(); ++i) {
    const auto& gu = gus[i];
    if (!gu.position.allFinite() || gu.position.x() < 0.0 || gu.position.x() > width ||
        gu.position.y() < 0.0 || gu.position.y() > height) {
      throw ValidationError(fmt::format("GU {} at ({}, {}) lies outside the {} x {} area", i,
                                        gu.position.x(), gu.position.y(), width, height));
    }
    if (!(gu.offered_load >= 0.0) || !std::isfinite(gu.offered_load)) {
      throw ValidationError(fmt::format("GU {} has invalid offered load {}", i, gu.offered_load));
    }
  }
}

std::vector<Scenario> reference_scenarios() {
  const auto gu = [](double x, double y, double load) {
    return GroundUser{Vec3(x, y, 0.0), load};
  };
  Scenario two;
  two.gus = {gu(47, 32, 200), gu(52, 71, 117)};
  Scenario five;
  five.gus = {gu(19, 62, 36), gu(85, 46, 27), gu(86, 53, 19), gu(2, 9, 14), gu(52, 88, 23)};
  Scenario ten;
  ten.gus = {gu(69, 83, 9), gu(68, 91, 6), gu(26, 16, 1), gu(67, 8, 5), gu(38, 21, 3),
             gu(23, 71, 6), gu(60, 34, 7), gu(8, 31, 5),  gu(59, 59, 8), gu(20, 79, 6)};
  return {two, five, ten};
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ScenarioRng::ScenarioRng(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t state = master_seed;
  const std::uint64_t stream = splitmix64(state);
  state = stream ^ index;
  engine_.seed(splitmix64(state));
}

std::uint64_t ScenarioRng::next_u64() { return engine_(); }

double ScenarioRng::uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

Scenario generate_random(std::size_t n, std::uint64_t master_seed, std::uint64_t index,
                         LoadRange loads, double width, double height) {
  if (n == 0) throw ValidationError("a random scenario needs at least one GU");
  if (!(loads.upper >= loads.lower) || loads.lower < 0.0) {
    throw ValidationError(fmt::format("invalid load range [{}, {}]", loads.lower, loads.upper));
  }
  ScenarioRng rng(master_seed, index);
  Scenario s;
  s.width = width;
  s.height = height;
  s.seed = master_seed;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = rng.uniform(0.0, width);
    const double y = rng.uniform(0.0, height);
    const double load = rng.uniform(loads.lower, loads.upper);
    s.gus.push_back({Vec3(x, y, 0.0), load});
  }
  return s;
}

const char* to_string(OutcomeStatus status) {
  switch (status) {
    case OutcomeStatus::BothFeasible: return "both_feasible";
    case OutcomeStatus::FixedInfeasible: return "fixed_infeasible";
    case OutcomeStatus::Excluded: return "excluded";
  }
  return "unknown";
}

ScenarioOutcome evaluate_scenario(const Scenario& scenario, const PlannerConfig& config,
                                  std::uint64_t index) {
  ScenarioOutcome out;
  out.index = index;
  std::vector<FapPlan> plans;
  try {
    plans = plan(scenario, config);
  } catch (const InfeasibleError& e) {
    out.note = e.what();
    return out;
  }
  out.fap_count = plans.size();
  bool fixed_ok = true;
  for (const auto& fap : plans) {
    out.rotary_energy_per_hour += fap.rotary_selection.energy_per_hour;
    if (fap.fixed_selection.feasible()) {
      out.fixed_energy_per_hour += fap.fixed_selection.energy_per_hour;
    } else {
      fixed_ok = false;
    }
  }
  if (!fixed_ok) {
    out.status = OutcomeStatus::FixedInfeasible;
    out.fixed_energy_per_hour = 0.0;
    return out;
  }
  out.status = OutcomeStatus::BothFeasible;
  out.percent_increase = 100.0 * (out.fixed_energy_per_hour - out.rotary_energy_per_hour) /
                         out.rotary_energy_per_hour;
  return out;
}

double percentile(std::vector<double> samples, double q) {
  if (samples.empty()) throw ValidationError("percentile of an empty sample");
  std::sort(samples.begin(), samples.end());
  const double pos = std::clamp(q, 0.0, 100.0) / 100.0 * double(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, samples.size() - 1);
  return samples[lo] + (pos - double(lo)) * (samples[hi] - samples[lo]);
}

double BatchStats::infeasible_rate() const {
  const std::size_t plannable = scenario_count - excluded_count;
  return plannable ? double(infeasible_fixed_count) / double(plannable) : 0.0;
}

BatchStats run_batch(const BatchOptions& options, const PlannerConfig& config) {
  if (options.scenario_count == 0) throw ValidationError("batch needs at least one scenario");
  BatchStats stats;
  stats.gu_count = options.gu_count;
  stats.scenario_count = options.scenario_count;
  stats.seed = options.seed;
  stats.outcomes.resize(options.scenario_count);

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < options.scenario_count; i = next++) {
      Scenario s = generate_random(options.gu_count, options.seed, i, options.loads);
      s.grid_res = options.grid_res;
      stats.outcomes[i] = evaluate_scenario(s, config, i);
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, options.scenario_count);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  for (const auto& o : stats.outcomes) {
    switch (o.status) {
      case OutcomeStatus::BothFeasible:
        ++stats.feasible_count;
        stats.percent_increase.push_back(*o.percent_increase);
        break;
      case OutcomeStatus::FixedInfeasible: ++stats.infeasible_fixed_count; break;
      case OutcomeStatus::Excluded: ++stats.excluded_count; break;
    }
  }
  if (!stats.percent_increase.empty()) {
    const auto& v = stats.percent_increase;
    stats.percentiles = Percentiles{percentile(v, 5), percentile(v, 25), percentile(v, 50),
                                    percentile(v, 75), percentile(v, 95)};
  }
  return stats;
}

}  // namespace fapsim
