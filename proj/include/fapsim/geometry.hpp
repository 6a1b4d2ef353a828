#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "fapsim/energy_models.hpp"

namespace fapsim {

using Cell = Eigen::Vector2i;
using Box2 = Eigen::AlignedBox2d;

/// Ground footprint, at FAP altitude, of one GU's coverage sphere.
struct CoverageDisc {
  Vec2 center;
  double radius;
};

/// Slice of the sphere of radius max_distance around `gu` at height
/// fap_altitude; empty when the sphere does not reach that height.
std::optional<CoverageDisc> sphere_to_disc(const Vec3& gu, double max_distance,
                                           double fap_altitude);

/// Set of raster cells on a global lattice of pitch `res`: cell (i, j) covers
/// [i·res, (i+1)·res) × [j·res, (j+1)·res). Areas built at the same
/// resolution share the lattice, so set operations between them are exact.
class IntersectionArea {
 public:
  using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

  explicit IntersectionArea(double res);
  /// mask(a, b) stands for cell origin + (a, b).
  IntersectionArea(double res, Cell origin, Mask mask);

  double resolution() const { return res_; }
  bool empty() const { return count_ == 0; }
  std::size_t cell_count() const { return count_; }
  double area_m2() const { return static_cast<double>(count_) * res_ * res_; }

  bool contains(const Cell& cell) const;
  /// Point lies in a member cell.
  bool contains_point(const Vec2& p) const;
  /// Point lies in the region spanned by member cell centers: the 2×2 block
  /// of cells whose centers surround it is entirely in the set.
  bool covers_point(const Vec2& p) const;

  Vec2 cell_center(const Cell& cell) const;
  Cell cell_at(const Vec2& p) const;

  /// Member cells, column-major over the mask.
  std::vector<Cell> cells() const;

  Cell origin() const { return origin_; }
  const Mask& mask() const { return mask_; }

  /// Bounding box of the member cells' squares (empty box for an empty area).
  Box2 bounding_box() const;

  friend bool operator==(const IntersectionArea& a, const IntersectionArea& b);

 private:
  double res_;
  Cell origin_ = Cell::Zero();
  Mask mask_;
  std::size_t count_ = 0;
};

/// Cells whose centers lie inside every disc and inside `bounds`.
IntersectionArea intersect_discs(std::span<const CoverageDisc> discs, const Box2& bounds,
                                 double res);

/// `area` minus every cell claimed by an earlier area.
IntersectionArea subtract_overlaps(const IntersectionArea& area,
                                   std::span<const IntersectionArea> earlier);

struct AreaShape {
  Vec2 centroid;
  std::vector<Cell> boundary;  // members with a 4-neighbour outside the set
  double min_dist;             // centroid to nearest boundary cell center [m]
  Vec2 principal_axis;         // unit direction of largest second moment
};

/// Throws ValidationError for an empty area.
AreaShape centroid_and_boundary(const IntersectionArea& area);

}  // namespace fapsim
