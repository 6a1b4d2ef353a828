#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "fapsim/geometry.hpp"

namespace fapsim {

enum class TrajectoryKind { Circular, InnerElliptic, Elliptic, Hover };

const char* to_string(TrajectoryKind kind);

struct LineSegment {
  Vec2 start;
  Vec2 end;
  double speed = 0.0;  // [m/s], assigned by the energy layer

  double length() const { return (end - start).norm(); }
  Vec2 point_at(double s) const;
  Vec2 tangent_at(double s) const;
};

struct ArcSegment {
  Vec2 center;
  double radius;
  double start_angle;  // [rad]
  double sweep;        // [rad], positive = counter-clockwise
  double speed = 0.0;

  double length() const;
  Vec2 point_at(double s) const;
  Vec2 tangent_at(double s) const;
  Vec2 start() const { return point_at(0.0); }
  Vec2 end() const { return point_at(length()); }
};

using Segment = std::variant<LineSegment, ArcSegment>;

double segment_length(const Segment& segment);
double segment_speed(const Segment& segment);
Vec2 segment_point(const Segment& segment, double s);
Vec2 segment_tangent(const Segment& segment, double s);
TurnRadius segment_radius(const Segment& segment);

/// Closed flight loop. A Hover trajectory has no segments and holds its
/// position in `anchor`.
struct Trajectory {
  TrajectoryKind kind = TrajectoryKind::Hover;
  std::vector<Segment> segments;
  Vec2 anchor = Vec2::Zero();

  double length() const;
  /// Loop start; the anchor for Hover.
  Vec2 start() const;
  /// Point at arc length s, wrapped onto the loop.
  Vec2 point_at(double s) const;
  /// Uniform samples with spacing <= `spacing` along the loop.
  std::vector<Vec2> sample_points(double spacing) const;
};

Trajectory make_hover(const Vec2& at);
Trajectory make_circle(const Vec2& center, double radius);
/// Two straight segments of length `straight_length` joined by semicircles
/// of radius `arc_radius`, centered at `center`, lines parallel to `axis`.
Trajectory make_stadium(TrajectoryKind kind, const Vec2& center, const Vec2& axis,
                        double arc_radius, double straight_length);

/// Circle of radius min_dist around the centroid; Hover at the centroid when
/// min_dist is below `res`.
Trajectory build_circular(const AreaShape& shape, double res);

/// Stadium of arc radius r_c/2 and straight length r_c along the principal
/// axis, inside the Circular disc. Empty when the arc radius is below `res`.
std::optional<Trajectory> build_inner_elliptic(const AreaShape& shape, double res);

/// Stadium spanning the area's full extent along the principal axis, with
/// the widest arc radius (at most r_c) that keeps it inside the area. Empty
/// when it degenerates to the Circular loop (straight length below res) or its
/// arc radius falls below res.
std::optional<Trajectory> build_elliptic(const IntersectionArea& area, const AreaShape& shape);

/// False for Hover and for any arc tighter than r_min.
bool fixed_wing_feasible(const Trajectory& trajectory, double r_min);

}  // namespace fapsim
