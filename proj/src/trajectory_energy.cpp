#include "fapsim/trajectory_energy.hpp"

#include <fmt/format.h>

namespace fapsim {

TrajectoryEnergy trajectory_energy(const Trajectory& trajectory, const UavModel& model,
                                   SpeedBounds bounds) {
  TrajectoryEnergy result{trajectory, 0.0, 0.0, 0.0, {}};
  if (trajectory.kind == TrajectoryKind::Hover || trajectory.segments.empty()) {
    const auto* rotary = std::get_if<RotaryWingParams>(&model);
    if (!rotary) throw InfeasibleError("fixed-wing UAVs cannot hover");
    result.avg_power = rotary_hover_power(*rotary);
    result.energy_per_hour = result.avg_power * 3600.0;
    return result;
  }

  if (const auto* fixed = std::get_if<FixedWingParams>(&model)) {
    for (const auto& seg : trajectory.segments) {
      const auto* arc = std::get_if<ArcSegment>(&seg);
      if (arc && arc->radius < fixed->min_turn_radius) {
        throw InfeasibleError(fmt::format("{} trajectory has a {:.3f} m arc, below the {} m "
                                          "fixed-wing minimum",
                                          to_string(trajectory.kind), arc->radius,
                                          fixed->min_turn_radius),
                              arc->radius);
      }
    }
  }

  double energy = 0.0;
  for (auto& seg : result.trajectory.segments) {
    const TurnRadius radius = segment_radius(seg);
    const SpeedOptimum best = optimal_speed(model, radius, bounds);
    const double length = segment_length(seg);
    const double duration = length / best.speed;
    std::visit([&](auto& s) { s.speed = best.speed; }, seg);
    result.segments.push_back({radius, length, best.speed, best.power, duration});
    result.lap_time += duration;
    energy += best.power * duration;
  }
  result.avg_power = energy / result.lap_time;
  result.energy_per_hour = result.avg_power * 3600.0;
  return result;
}

}  // namespace fapsim
