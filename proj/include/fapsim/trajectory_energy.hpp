#pragma once

#include <vector>

#include "fapsim/energy_models.hpp"
#include "fapsim/trajectory.hpp"

namespace fapsim {

struct SegmentEnergy {
  TurnRadius radius;
  double length;    // [m]
  double speed;     // [m/s]
  double power;     // [W]
  double duration;  // [s]
};

struct TrajectoryEnergy {
  Trajectory trajectory;  // segments carry their optimal speeds
  double lap_time;        // [s]; 0 for Hover
  double avg_power;       // [W]
  double energy_per_hour;  // [J]
  std::vector<SegmentEnergy> segments;
};

/// Flies each segment at the speed minimizing its power and averages power
/// over one lap. Speed changes between segments are instantaneous.
/// Throws InfeasibleError for fixed-wing Hover or arcs below the minimum
/// turn radius.
TrajectoryEnergy trajectory_energy(const Trajectory& trajectory, const UavModel& model,
                                   SpeedBounds bounds = {});

}  // namespace fapsim
