#pragma once

#include <iosfwd>
#include <vector>

#include "fapsim/supply_planner.hpp"

namespace fapsim {

struct TraceRow {
  double t;       // [s]
  Vec3 position;  // [m]
  double speed;   // [m/s]
};

/// Position and speed every dt seconds over [0, duration] while flying the
/// loop at its per-segment speeds.
std::vector<TraceRow> sample_trace(const TrajectoryEnergy& flown, double duration, double dt,
                                   double altitude);

/// Same timeline with velocity and acceleration, for path integration.
SampledPath sample_kinematics(const TrajectoryEnergy& flown, double duration, double dt);

/// Writes `t,x,y,z,speed` for the trajectory selected for `type`. Throws
/// InfeasibleError when that UAV type has no feasible selection.
std::vector<TraceRow> emit_trace(const FapPlan& fap, UavType type, double duration, double dt,
                                 double altitude, std::ostream& out);

}  // namespace fapsim
