#pragma once

// SUPPLY placement: group ground users onto the fewest Flying Access Points,
// derive each group's feasible placement area, build the candidate loops and
// keep the cheapest one per UAV type.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fapsim/energy_models.hpp"
#include "fapsim/geometry.hpp"
#include "fapsim/radio_link.hpp"
#include "fapsim/scenario.hpp"
#include "fapsim/trajectory.hpp"
#include "fapsim/trajectory_energy.hpp"

namespace fapsim {

/// What makes a GU group servable by one FAP.
/// UniformMcs: at some grid position every member gets at least the rate of
/// the lowest MCS that carries the group's summed load (the same MCS that
/// later sizes the coverage spheres, so the group's area is never empty by
/// construction). Airtime: Σ load_i/rate_i <= 1 with each GU at its own rate.
enum class GroupingRule { UniformMcs, Airtime };

const char* to_string(GroupingRule rule);
GroupingRule grouping_rule_from_string(const std::string& text);

struct PlannerConfig {
  RotaryWingParams rotary;
  FixedWingParams fixed;
  LinkBudget link;
  McsTable mcs = McsTable::ieee80211ac_160mhz();
  double fap_altitude = 6.0;  // [m]
  SpeedBounds speeds;
  GroupingRule grouping = GroupingRule::UniformMcs;
  /// Largest GU count solved by the exact partition; greedy beyond.
  std::size_t exact_partition_limit = 16;

  void validate() const;
};

using GuGroup = std::vector<std::size_t>;

/// Candidate FAP positions: the scenario area sampled every grid_res meters,
/// edges included, at FAP altitude.
std::vector<Vec3> candidate_grid(const Scenario& scenario, double fap_altitude);

/// rates(p, i): rate [Mbit/s] GU i gets from a FAP at grid position p, after
/// the SNR margin.
Eigen::MatrixXd link_matrix(std::span<const GroundUser> gus, std::span<const Vec3> grid,
                            const LinkBudget& budget, const McsTable& table);

struct PlacementFit {
  std::size_t position;  // grid index
  double airtime;        // Σ load/rate
};

/// Position where every member has a link and the summed airtime fits in one
/// channel, choosing the least airtime (lowest index on ties).
std::optional<PlacementFit> subset_feasible(std::span<const std::size_t> members,
                                            const Eigen::MatrixXd& rates,
                                            std::span<const double> loads);

/// Position where the members can share one uniform MCS: each member's rate is
/// at least the rate of the lowest MCS carrying the summed load. Least airtime
/// wins, lowest index on ties.
std::optional<PlacementFit> uniform_mcs_feasible(std::span<const std::size_t> members,
                                                 const Eigen::MatrixXd& rates,
                                                 std::span<const double> loads,
                                                 const McsTable& table);

/// Dispatches to subset_feasible or uniform_mcs_feasible.
std::optional<PlacementFit> group_feasible(std::span<const std::size_t> members,
                                           const Eigen::MatrixXd& rates,
                                           std::span<const double> loads, const McsTable& table,
                                           GroupingRule rule);

/// Partition into the fewest feasible groups. Exact up to exact_limit GUs;
/// ties resolve to the lexicographically smallest sequence of subset masks.
/// Groups come out by descending summed load (stable), which is the order
/// plan() removes overlaps in.
/// Throws InfeasibleError (with the GU index) when a GU cannot be served alone.
std::vector<GuGroup> min_partition(std::span<const double> loads, const Eigen::MatrixXd& rates,
                                   const McsTable& table,
                                   GroupingRule rule = GroupingRule::UniformMcs,
                                   std::size_t exact_limit = 16);

/// Lowest MCS whose rate alone carries the group's summed load; every member
/// targets its threshold. Throws InfeasibleError when even the top MCS is short.
McsEntry group_target_snr(std::span<const double> loads, const McsTable& table);

struct CandidateEvaluation {
  Trajectory trajectory;
  std::optional<TrajectoryEnergy> energy;  // empty when infeasible for the UAV type
  std::string infeasible_reason;
};

struct Selection {
  std::optional<std::size_t> candidate;  // index into the evaluations; empty = infeasible
  TrajectoryKind kind = TrajectoryKind::Hover;
  double avg_power = 0.0;        // [W]
  double energy_per_hour = 0.0;  // [J]

  bool feasible() const { return candidate.has_value(); }
};

/// Feasible candidate with the least energy per hour; ties go to the earlier
/// kind in Circular, InnerElliptic, Elliptic, Hover order.
Selection select_trajectory(std::span<const CandidateEvaluation> candidates);

struct FapPlan {
  GuGroup group;
  McsEntry target_mcs;
  double sphere_radius = 0.0;  // [m], shared by the group's GUs
  PlacementFit placement;      // best grid position found while grouping
  Vec3 placement_position = Vec3::Zero();
  IntersectionArea area{1.0};
  std::optional<AreaShape> shape;  // empty when nothing is left of the area
  double circular_radius = 0.0;    // 0 when the area is degenerate
  std::vector<CandidateEvaluation> rotary;
  std::vector<CandidateEvaluation> fixed;
  Selection rotary_selection;
  Selection fixed_selection;

  const std::vector<CandidateEvaluation>& evaluations(UavType type) const {
    return type == UavType::Rotary ? rotary : fixed;
  }
  const Selection& selection(UavType type) const {
    return type == UavType::Rotary ? rotary_selection : fixed_selection;
  }
};

/// Full placement pipeline. Groups are processed in min_partition order, each
/// area losing the cells already claimed by earlier ones.
std::vector<FapPlan> plan(const Scenario& scenario, const PlannerConfig& config);

}  // namespace fapsim
