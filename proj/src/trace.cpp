#include "fapsim/trace.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

namespace fapsim {

namespace {

struct LoopState {
  Vec2 position;
  Vec2 velocity;
  Vec2 acceleration;
  double speed;
};

LoopState state_at(const TrajectoryEnergy& flown, double t) {
  const auto& segments = flown.trajectory.segments;
  if (segments.empty() || !(flown.lap_time > 0.0)) {
    return {flown.trajectory.anchor, Vec2::Zero(), Vec2::Zero(), 0.0};
  }
  double local = std::fmod(t, flown.lap_time);
  std::size_t k = 0;
  for (; k + 1 < segments.size(); ++k) {
    const double d = flown.segments[k].duration;
    if (local < d) break;
    local -= d;
  }
  const auto& seg = segments[k];
  const double speed = segment_speed(seg);
  const double s = std::min(speed * local, segment_length(seg));
  const Vec2 tangent = segment_tangent(seg, s);
  Vec2 accel = Vec2::Zero();
  if (const auto* arc = std::get_if<ArcSegment>(&seg)) {
    const Vec2 inward = arc->center - arc->point_at(s);
    accel = inward.normalized() * (speed * speed / arc->radius);
  }
  return {segment_point(seg, s), tangent * speed, accel, speed};
}

void check_timing(double duration, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ValidationError(fmt::format("trace step must be positive, got {}", dt));
  }
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw ValidationError(fmt::format("trace duration must be >= 0, got {}", duration));
  }
}

std::size_t step_count(double duration, double dt) {
  return static_cast<std::size_t>(std::floor(duration / dt + 1e-9)) + 1;
}

}  // namespace

std::vector<TraceRow> sample_trace(const TrajectoryEnergy& flown, double duration, double dt,
                                   double altitude) {
  check_timing(duration, dt);
  std::vector<TraceRow> rows;
  const std::size_t n = step_count(duration, dt);
  rows.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = double(k) * dt;
    const LoopState st = state_at(flown, t);
    rows.push_back({t, Vec3(st.position.x(), st.position.y(), altitude), st.speed});
  }
  return rows;
}

SampledPath sample_kinematics(const TrajectoryEnergy& flown, double duration, double dt) {
  check_timing(duration, dt);
  std::vector<PathSample> samples;
  const std::size_t n = step_count(duration, dt);
  samples.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = double(k) * dt;
    const LoopState st = state_at(flown, t);
    samples.push_back({t, st.position, st.velocity, st.acceleration});
  }
  return SampledPath(std::move(samples));
}

std::vector<TraceRow> emit_trace(const FapPlan& fap, UavType type, double duration, double dt,
                                 double altitude, std::ostream& out) {
  const Selection& sel = fap.selection(type);
  if (!sel.feasible()) {
    throw InfeasibleError(fmt::format("no feasible {}-wing trajectory for this FAP", to_string(type)));
  }
  const auto& flown = *fap.evaluations(type)[*sel.candidate].energy;
  auto rows = sample_trace(flown, duration, dt, altitude);
  out << "t,x,y,z,speed\n";
  for (const auto& r : rows) {
    out << fmt::format("{:.6f},{:.6f},{:.6f},{:.6f},{:.6f}\n", r.t, r.position.x(),
                       r.position.y(), r.position.z(), r.speed);
  }
  return rows;
}

}  // namespace fapsim
