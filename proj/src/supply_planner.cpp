#include "fapsim/supply_planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include <fmt/format.h>

namespace fapsim {

namespace {

constexpr double kAirtimeSlack = 1e-12;

}  // namespace

void PlannerConfig::validate() const {
  rotary.validate();
  fixed.validate();
  link.validate();
  if (!(fap_altitude >= 0.0) || !std::isfinite(fap_altitude)) {
    throw ValidationError(fmt::format("FAP altitude must be >= 0, got {}", fap_altitude));
  }
}

std::vector<Vec3> candidate_grid(const Scenario& scenario, double fap_altitude) {
  const double res = scenario.grid_res;
  const auto nx = static_cast<std::size_t>(std::floor(scenario.width / res + 1e-9)) + 1;
  const auto ny = static_cast<std::size_t>(std::floor(scenario.height / res + 1e-9)) + 1;
  std::vector<Vec3> grid;
  grid.reserve(nx * ny);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      grid.emplace_back(double(ix) * res, double(iy) * res, fap_altitude);
    }
  }
  return grid;
}

Eigen::MatrixXd link_matrix(std::span<const GroundUser> gus, std::span<const Vec3> grid,
                            const LinkBudget& budget, const McsTable& table) {
  Eigen::MatrixXd rates(Eigen::Index(grid.size()), Eigen::Index(gus.size()));
  for (std::size_t i = 0; i < gus.size(); ++i) {
    for (std::size_t p = 0; p < grid.size(); ++p) {
      const double d = std::max((grid[p] - gus[i].position).norm(), 1e-3);
      rates(Eigen::Index(p), Eigen::Index(i)) =
          capacity_for_snr(snr_at(d, budget) - budget.snr_margin_db, table);
    }
  }
  return rates;
}

std::optional<PlacementFit> subset_feasible(std::span<const std::size_t> members,
                                            const Eigen::MatrixXd& rates,
                                            std::span<const double> loads) {
  std::optional<PlacementFit> best;
  for (Eigen::Index p = 0; p < rates.rows(); ++p) {
    double airtime = 0.0;
    bool linked = true;
    for (const std::size_t i : members) {
      const double rate = rates(p, Eigen::Index(i));
      if (!(rate > 0.0)) {
        linked = false;
        break;
      }
      airtime += loads[i] / rate;
    }
    if (!linked || airtime > 1.0 + kAirtimeSlack) continue;
    if (!best || airtime < best->airtime) best = PlacementFit{std::size_t(p), airtime};
  }
  return best;
}

namespace {

// Rate of the lowest MCS that carries `total` alone; empty past the top MCS.
std::optional<double> uniform_rate(double total, const McsTable& table) {
  for (const auto& entry : table.entries()) {
    if (total / entry.rate_mbps <= 1.0 + kAirtimeSlack) return entry.rate_mbps;
  }
  return std::nullopt;
}

}  // namespace

std::optional<PlacementFit> uniform_mcs_feasible(std::span<const std::size_t> members,
                                                 const Eigen::MatrixXd& rates,
                                                 std::span<const double> loads,
                                                 const McsTable& table) {
  double total = 0.0;
  for (const std::size_t i : members) total += loads[i];
  const auto needed = uniform_rate(total, table);
  if (!needed) return std::nullopt;
  std::optional<PlacementFit> best;
  for (Eigen::Index p = 0; p < rates.rows(); ++p) {
    double airtime = 0.0;
    bool served = true;
    for (const std::size_t i : members) {
      const double rate = rates(p, Eigen::Index(i));
      if (rate < *needed) {
        served = false;
        break;
      }
      airtime += loads[i] / rate;
    }
    if (!served) continue;
    if (!best || airtime < best->airtime) best = PlacementFit{std::size_t(p), airtime};
  }
  return best;
}

std::optional<PlacementFit> group_feasible(std::span<const std::size_t> members,
                                           const Eigen::MatrixXd& rates,
                                           std::span<const double> loads, const McsTable& table,
                                           GroupingRule rule) {
  return rule == GroupingRule::Airtime ? subset_feasible(members, rates, loads)
                                       : uniform_mcs_feasible(members, rates, loads, table);
}

const char* to_string(GroupingRule rule) {
  return rule == GroupingRule::Airtime ? "airtime" : "uniform_mcs";
}

GroupingRule grouping_rule_from_string(const std::string& text) {
  if (text == "uniform_mcs") return GroupingRule::UniformMcs;
  if (text == "airtime") return GroupingRule::Airtime;
  throw ValidationError(fmt::format("unknown grouping rule '{}' (uniform_mcs or airtime)", text));
}

namespace {

using Mask = std::uint32_t;

struct ActivePosition {
  Eigen::Index position;
  double airtime;
  double min_rate;
};

struct Enumerator {
  const Eigen::MatrixXd& rates;
  std::span<const double> loads;
  const McsTable& table;
  GroupingRule rule;
  std::vector<char>& feasible;

  bool keeps(double airtime, double min_rate, double total) const {
    if (rule == GroupingRule::Airtime) return airtime <= 1.0 + kAirtimeSlack;
    const auto needed = uniform_rate(total, table);
    return needed && min_rate >= *needed;
  }

  // Both rules are downward closed, so feasible subsets can be grown one GU
  // at a time while carrying the positions that still fit.
  void grow(Mask mask, std::size_t next, double total, const std::vector<ActivePosition>& active) {
    feasible[mask] = 1;
    std::vector<ActivePosition> grown;
    for (std::size_t j = next; j < loads.size(); ++j) {
      grown.clear();
      const double sum = total + loads[j];
      for (const auto& a : active) {
        const double rate = rates(a.position, Eigen::Index(j));
        if (!(rate > 0.0)) continue;
        const double airtime = a.airtime + loads[j] / rate;
        const double min_rate = std::min(a.min_rate, rate);
        if (keeps(airtime, min_rate, sum)) grown.push_back({a.position, airtime, min_rate});
      }
      if (!grown.empty()) grow(mask | (Mask{1} << j), j + 1, sum, grown);
    }
  }
};

GuGroup members_of(Mask mask) {
  GuGroup group;
  for (std::size_t i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1U) group.push_back(i);
  }
  return group;
}

std::vector<GuGroup> exact_partition(std::span<const double> loads, const Eigen::MatrixXd& rates,
                                     const McsTable& table, GroupingRule rule) {
  const std::size_t n = loads.size();
  const Mask full = (Mask{1} << n) - 1;
  std::vector<char> feasible(std::size_t{1} << n, 0);
  std::vector<ActivePosition> all(std::size_t(rates.rows()));
  for (Eigen::Index p = 0; p < rates.rows(); ++p) {
    all[std::size_t(p)] = {p, 0.0, std::numeric_limits<double>::infinity()};
  }
  Enumerator{rates, loads, table, rule, feasible}.grow(0, 0, 0.0, all);

  constexpr int kUnreachable = std::numeric_limits<int>::max() / 2;
  std::vector<int> groups_needed(std::size_t(full) + 1, kUnreachable);
  groups_needed[0] = 0;
  for (Mask mask = 1; mask <= full; ++mask) {
    const Mask low = mask & (~mask + 1);
    const Mask rest = mask ^ low;
    // Submasks of `rest`, each joined with the lowest member.
    for (Mask sub = rest;; sub = (sub - 1) & rest) {
      const Mask subset = sub | low;
      if (feasible[subset]) {
        groups_needed[mask] =
            std::min(groups_needed[mask], groups_needed[mask ^ subset] + 1);
      }
      if (sub == 0) break;
    }
  }

  std::vector<GuGroup> groups;
  Mask remaining = full;
  while (remaining) {
    const Mask low = remaining & (~remaining + 1);
    const Mask rest = remaining ^ low;
    // Submasks are visited in descending order; keep the smallest that stays optimal.
    std::optional<Mask> chosen;
    for (Mask sub = rest;; sub = (sub - 1) & rest) {
      const Mask subset = sub | low;
      if (feasible[subset] && groups_needed[remaining ^ subset] + 1 == groups_needed[remaining]) {
        chosen = subset;
      }
      if (sub == 0) break;
    }
    if (!chosen) break;  // unreachable once singletons are feasible
    groups.push_back(members_of(*chosen));
    remaining ^= *chosen;
  }
  return groups;
}

std::vector<GuGroup> greedy_partition(std::span<const double> loads, const Eigen::MatrixXd& rates,
                                      const McsTable& table, GroupingRule rule) {
  std::vector<char> assigned(loads.size(), 0);
  std::vector<GuGroup> groups;
  for (std::size_t seed = 0; seed < loads.size(); ++seed) {
    if (assigned[seed]) continue;
    GuGroup group{seed};
    assigned[seed] = 1;
    for (std::size_t j = seed + 1; j < loads.size(); ++j) {
      if (assigned[j]) continue;
      group.push_back(j);
      if (group_feasible(group, rates, loads, table, rule)) {
        assigned[j] = 1;
      } else {
        group.pop_back();
      }
    }
    groups.push_back(std::move(group));
  }
  return groups;
}

}  // namespace

std::vector<GuGroup> min_partition(std::span<const double> loads, const Eigen::MatrixXd& rates,
                                   const McsTable& table, GroupingRule rule,
                                   std::size_t exact_limit) {
  if (std::size_t(rates.cols()) != loads.size()) {
    throw ValidationError("rate matrix and load list disagree on the number of GUs");
  }
  for (std::size_t i = 0; i < loads.size(); ++i) {
    const std::size_t single[] = {i};
    if (!group_feasible(single, rates, loads, table, rule)) {
      throw InfeasibleError(
          fmt::format("GU {} (load {} Mbit/s) cannot be served from any FAP position", i,
                      loads[i]),
          std::nullopt, i);
    }
  }
  if (loads.empty()) return {};
  auto groups = loads.size() <= std::min<std::size_t>(exact_limit, 24)
                    ? exact_partition(loads, rates, table, rule)
                    : greedy_partition(loads, rates, table, rule);

  // Heaviest groups get the smallest spheres; letting them claim their area
  // first keeps a large neighbour from swallowing them during overlap removal.
  const auto total = [&](const GuGroup& g) {
    double sum = 0.0;
    for (const auto i : g) sum += loads[i];
    return sum;
  };
  std::stable_sort(groups.begin(), groups.end(),
                   [&](const GuGroup& a, const GuGroup& b) { return total(a) > total(b); });
  return groups;
}

McsEntry group_target_snr(std::span<const double> loads, const McsTable& table) {
  const double total = std::accumulate(loads.begin(), loads.end(), 0.0);
  for (const auto& entry : table.entries()) {
    if (total / entry.rate_mbps <= 1.0 + kAirtimeSlack) return entry;
  }
  throw InfeasibleError(fmt::format("group load {} Mbit/s exceeds the top MCS rate {} Mbit/s",
                                    total, table.top_rate()));
}

namespace {

int kind_rank(TrajectoryKind kind) { return static_cast<int>(kind); }

}  // namespace

Selection select_trajectory(std::span<const CandidateEvaluation> candidates) {
  Selection best;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const auto& c = candidates[k];
    if (!c.energy) continue;
    const double e = c.energy->energy_per_hour;
    const bool better =
        !best.candidate || e < best.energy_per_hour * (1.0 - 1e-12) ||
        (e <= best.energy_per_hour * (1.0 + 1e-12) &&
         kind_rank(c.trajectory.kind) < kind_rank(best.kind));
    if (better) {
      best.candidate = k;
      best.kind = c.trajectory.kind;
      best.avg_power = c.energy->avg_power;
      best.energy_per_hour = e;
    }
  }
  return best;
}

namespace {

std::vector<CandidateEvaluation> evaluate(const std::vector<Trajectory>& candidates,
                                          const UavModel& model, const SpeedBounds& speeds) {
  std::vector<CandidateEvaluation> out;
  for (const auto& t : candidates) {
    CandidateEvaluation eval{t, std::nullopt, {}};
    try {
      eval.energy = trajectory_energy(t, model, speeds);
    } catch (const InfeasibleError& e) {
      eval.infeasible_reason = e.what();
    }
    out.push_back(std::move(eval));
  }
  return out;
}

}  // namespace

std::vector<FapPlan> plan(const Scenario& scenario, const PlannerConfig& config) {
  scenario.validate();
  config.validate();
  const double res = scenario.grid_res;
  const auto grid = candidate_grid(scenario, config.fap_altitude);
  const Eigen::MatrixXd rates = link_matrix(scenario.gus, grid, config.link, config.mcs);
  std::vector<double> loads;
  for (const auto& gu : scenario.gus) loads.push_back(gu.offered_load);

  const auto groups =
      min_partition(loads, rates, config.mcs, config.grouping, config.exact_partition_limit);

  std::vector<FapPlan> plans;
  std::vector<IntersectionArea> claimed;
  for (const auto& group : groups) {
    FapPlan fap;
    fap.group = group;
    fap.placement = *group_feasible(group, rates, loads, config.mcs, config.grouping);
    fap.placement_position = grid[fap.placement.position];

    std::vector<double> group_loads;
    for (const auto i : group) group_loads.push_back(loads[i]);
    fap.target_mcs = group_target_snr(group_loads, config.mcs);
    fap.sphere_radius = max_distance_for_snr(fap.target_mcs.min_snr_db, config.link);

    std::vector<CoverageDisc> discs;
    Box2 bounds;
    bool reachable = true;
    for (const auto i : group) {
      const auto disc =
          sphere_to_disc(scenario.gus[i].position, fap.sphere_radius, config.fap_altitude);
      if (!disc) {
        reachable = false;
        break;
      }
      bounds.extend(Box2(disc->center.array() - disc->radius, disc->center.array() + disc->radius));
      discs.push_back(*disc);
    }
    fap.area = reachable ? intersect_discs(discs, bounds, res) : IntersectionArea(res);
    fap.area = subtract_overlaps(fap.area, claimed);
    claimed.push_back(fap.area);

    std::vector<Trajectory> candidates;
    if (fap.area.empty()) {
      candidates.push_back(make_hover(fap.placement_position.head<2>()));
    } else {
      fap.shape = centroid_and_boundary(fap.area);
      const Trajectory circular = build_circular(*fap.shape, res);
      if (circular.kind == TrajectoryKind::Circular) {
        fap.circular_radius = fap.shape->min_dist;
        candidates.push_back(circular);
        if (auto inner = build_inner_elliptic(*fap.shape, res)) candidates.push_back(*inner);
        if (auto elliptic = build_elliptic(fap.area, *fap.shape)) candidates.push_back(*elliptic);
      }
      candidates.push_back(make_hover(fap.shape->centroid));
    }

    fap.rotary = evaluate(candidates, config.rotary, config.speeds);
    fap.fixed = evaluate(candidates, config.fixed, config.speeds);
    fap.rotary_selection = select_trajectory(fap.rotary);
    fap.fixed_selection = select_trajectory(fap.fixed);
    plans.push_back(std::move(fap));
  }
  return plans;
}

}  // namespace fapsim
