#include "fapsim/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fapsim {

const char* to_string(TrajectoryKind kind) {
  switch (kind) {
    case TrajectoryKind::Circular: return "circular";
    case TrajectoryKind::InnerElliptic: return "inner_elliptic";
    case TrajectoryKind::Elliptic: return "elliptic";
    case TrajectoryKind::Hover: return "hover";
  }
  return "unknown";
}

Vec2 LineSegment::point_at(double s) const {
  const double len = length();
  return len > 0.0 ? start + (end - start) * (s / len) : start;
}

Vec2 LineSegment::tangent_at(double) const {
  const double len = length();
  return len > 0.0 ? Vec2((end - start) / len) : Vec2::Zero();
}

double ArcSegment::length() const { return radius * std::abs(sweep); }

Vec2 ArcSegment::point_at(double s) const {
  const double angle = start_angle + std::copysign(s / radius, sweep);
  return center + radius * Vec2(std::cos(angle), std::sin(angle));
}

Vec2 ArcSegment::tangent_at(double s) const {
  const double angle = start_angle + std::copysign(s / radius, sweep);
  const Vec2 ccw(-std::sin(angle), std::cos(angle));
  return sweep >= 0.0 ? ccw : Vec2(-ccw);
}

double segment_length(const Segment& segment) {
  return std::visit([](const auto& s) { return s.length(); }, segment);
}

double segment_speed(const Segment& segment) {
  return std::visit([](const auto& s) { return s.speed; }, segment);
}

Vec2 segment_point(const Segment& segment, double s) {
  return std::visit([s](const auto& seg) { return seg.point_at(s); }, segment);
}

Vec2 segment_tangent(const Segment& segment, double s) {
  return std::visit([s](const auto& seg) { return seg.tangent_at(s); }, segment);
}

TurnRadius segment_radius(const Segment& segment) {
  if (const auto* arc = std::get_if<ArcSegment>(&segment)) return TurnRadius::of(arc->radius);
  return TurnRadius::straight();
}

double Trajectory::length() const {
  double total = 0.0;
  for (const auto& s : segments) total += segment_length(s);
  return total;
}

Vec2 Trajectory::start() const {
  return segments.empty() ? anchor : segment_point(segments.front(), 0.0);
}

Vec2 Trajectory::point_at(double s) const {
  const double total = length();
  if (segments.empty() || total <= 0.0) return anchor;
  s = std::fmod(s, total);
  if (s < 0.0) s += total;
  for (const auto& seg : segments) {
    const double len = segment_length(seg);
    if (s <= len) return segment_point(seg, s);
    s -= len;
  }
  return segment_point(segments.back(), segment_length(segments.back()));
}

std::vector<Vec2> Trajectory::sample_points(double spacing) const {
  if (segments.empty()) return {anchor};
  std::vector<Vec2> points;
  for (const auto& seg : segments) {
    const double len = segment_length(seg);
    const auto n = std::max<long>(1, static_cast<long>(std::ceil(len / spacing)));
    for (long k = 0; k < n; ++k) points.push_back(segment_point(seg, len * double(k) / double(n)));
  }
  points.push_back(start());
  return points;
}

Trajectory make_hover(const Vec2& at) { return Trajectory{TrajectoryKind::Hover, {}, at}; }

Trajectory make_circle(const Vec2& center, double radius) {
  Trajectory t{TrajectoryKind::Circular, {}, center};
  t.segments.push_back(ArcSegment{center, radius, 0.0, 2.0 * std::numbers::pi});
  return t;
}

Trajectory make_stadium(TrajectoryKind kind, const Vec2& center, const Vec2& axis,
                        double arc_radius, double straight_length) {
  const Vec2 u = axis.normalized();
  const Vec2 n(-u.y(), u.x());
  const Vec2 half = 0.5 * straight_length * u;
  const double angle_minus_n = std::atan2(-n.y(), -n.x());
  const double angle_plus_n = std::atan2(n.y(), n.x());
  constexpr double pi = std::numbers::pi;

  Trajectory t{kind, {}, center};
  t.segments.push_back(LineSegment{center - half - arc_radius * n, center + half - arc_radius * n});
  t.segments.push_back(ArcSegment{center + half, arc_radius, angle_minus_n, pi});
  t.segments.push_back(LineSegment{center + half + arc_radius * n, center - half + arc_radius * n});
  t.segments.push_back(ArcSegment{center - half, arc_radius, angle_plus_n, pi});
  return t;
}

Trajectory build_circular(const AreaShape& shape, double res) {
  if (shape.min_dist < res) return make_hover(shape.centroid);
  return make_circle(shape.centroid, shape.min_dist);
}

std::optional<Trajectory> build_inner_elliptic(const AreaShape& shape, double res) {
  const double arc_radius = 0.5 * shape.min_dist;
  if (arc_radius < res) return std::nullopt;
  return make_stadium(TrajectoryKind::InnerElliptic, shape.centroid, shape.principal_axis,
                      arc_radius, shape.min_dist);
}

namespace {

bool loop_covered(const IntersectionArea& area, const Trajectory& loop, double spacing) {
  const auto points = loop.sample_points(spacing);
  return std::all_of(points.begin(), points.end(),
                     [&](const Vec2& p) { return area.covers_point(p); });
}

double axial_reach(const IntersectionArea& area, const Vec2& from, const Vec2& dir, double step) {
  double reach = 0.0;
  while (area.covers_point(from + (reach + step) * dir)) reach += step;
  return reach;
}

}  // namespace

std::optional<Trajectory> build_elliptic(const IntersectionArea& area, const AreaShape& shape) {
  const double res = area.resolution();
  const double step = 0.25 * res;
  const Vec2 u = shape.principal_axis.normalized();
  if (!area.covers_point(shape.centroid)) return std::nullopt;

  const double forward = axial_reach(area, shape.centroid, u, step);
  const double backward = axial_reach(area, shape.centroid, -u, step);
  // Tips pulled in half a cell so the raster's jagged rim does not pinch the arcs.
  const double span = forward + backward - res;
  const Vec2 center = shape.centroid + 0.5 * (forward - backward) * u;

  const auto stadium = [&](double rho) {
    return make_stadium(TrajectoryKind::Elliptic, center, u, rho, span - 2.0 * rho);
  };

  // Thinner stadia with the same tips nest inside wider ones, so coverage is
  // monotone in the arc radius.
  double lo = 0.0;
  double hi = std::min(shape.min_dist, 0.5 * span);
  if (loop_covered(area, stadium(hi), step)) {
    lo = hi;
  } else {
    while (hi - lo > step) {
      const double mid = 0.5 * (lo + hi);
      (loop_covered(area, stadium(mid), step) ? lo : hi) = mid;
    }
  }
  if (lo < res || span - 2.0 * lo < res) return std::nullopt;
  return stadium(lo);
}

bool fixed_wing_feasible(const Trajectory& trajectory, double r_min) {
  if (trajectory.kind == TrajectoryKind::Hover || trajectory.segments.empty()) return false;
  return std::none_of(trajectory.segments.begin(), trajectory.segments.end(),
                      [r_min](const Segment& s) {
                        const auto* arc = std::get_if<ArcSegment>(&s);
                        return arc && arc->radius < r_min;
                      });
}

}  // namespace fapsim
