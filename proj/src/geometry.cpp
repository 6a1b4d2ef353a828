#include "fapsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

namespace fapsim {

std::optional<CoverageDisc> sphere_to_disc(const Vec3& gu, double max_distance,
                                           double fap_altitude) {
  if (!(max_distance >= 0.0)) {
    throw ValidationError(fmt::format("sphere radius must be >= 0, got {}", max_distance));
  }
  const double dz = fap_altitude - gu.z();
  const double squared = max_distance * max_distance - dz * dz;
  if (squared < 0.0) return std::nullopt;
  return CoverageDisc{gu.head<2>(), std::sqrt(squared)};
}

IntersectionArea::IntersectionArea(double res) : res_(res) {
  if (!(res > 0.0) || !std::isfinite(res)) {
    throw ValidationError(fmt::format("raster resolution must be positive, got {}", res));
  }
}

IntersectionArea::IntersectionArea(double res, Cell origin, Mask mask)
    : IntersectionArea(res) {
  origin_ = origin;
  mask_ = std::move(mask);
  count_ = static_cast<std::size_t>(mask_.count());
}

bool IntersectionArea::contains(const Cell& cell) const {
  const Cell local = cell - origin_;
  return local.x() >= 0 && local.y() >= 0 && local.x() < mask_.rows() &&
         local.y() < mask_.cols() && mask_(local.x(), local.y());
}

bool IntersectionArea::contains_point(const Vec2& p) const { return contains(cell_at(p)); }

bool IntersectionArea::covers_point(const Vec2& p) const {
  // A coordinate exactly on a line of centers needs only that line.
  constexpr double eps = 1e-9;
  const double fx = p.x() / res_ - 0.5;
  const double fy = p.y() / res_ - 0.5;
  const int i0 = static_cast<int>(std::floor(fx + eps));
  const int i1 = static_cast<int>(std::ceil(fx - eps));
  const int j0 = static_cast<int>(std::floor(fy + eps));
  const int j1 = static_cast<int>(std::ceil(fy - eps));
  for (int i = i0; i <= i1; ++i) {
    for (int j = j0; j <= j1; ++j) {
      if (!contains({i, j})) return false;
    }
  }
  return true;
}

Vec2 IntersectionArea::cell_center(const Cell& cell) const {
  return (cell.cast<double>().array() + 0.5).matrix() * res_;
}

Cell IntersectionArea::cell_at(const Vec2& p) const {
  return {static_cast<int>(std::floor(p.x() / res_)), static_cast<int>(std::floor(p.y() / res_))};
}

std::vector<Cell> IntersectionArea::cells() const {
  std::vector<Cell> out;
  out.reserve(count_);
  for (Eigen::Index b = 0; b < mask_.cols(); ++b) {
    for (Eigen::Index a = 0; a < mask_.rows(); ++a) {
      if (mask_(a, b)) out.push_back(origin_ + Cell(int(a), int(b)));
    }
  }
  return out;
}

Box2 IntersectionArea::bounding_box() const {
  Box2 box;
  for (const Cell& c : cells()) {
    box.extend(c.cast<double>() * res_);
    box.extend((c.cast<double>().array() + 1.0).matrix() * res_);
  }
  return box;
}

bool operator==(const IntersectionArea& a, const IntersectionArea& b) {
  if (a.res_ != b.res_ || a.count_ != b.count_) return false;
  const auto cells = a.cells();
  return std::all_of(cells.begin(), cells.end(), [&](const Cell& c) { return b.contains(c); });
}

IntersectionArea intersect_discs(std::span<const CoverageDisc> discs, const Box2& bounds,
                                 double res) {
  IntersectionArea empty(res);
  if (bounds.isEmpty()) return empty;

  Box2 window = bounds;
  for (const auto& disc : discs) {
    window = window.intersection(Box2(disc.center.array() - disc.radius,
                                      disc.center.array() + disc.radius));
  }
  if (window.isEmpty()) return empty;

  const Cell lo(static_cast<int>(std::floor(window.min().x() / res)),
                static_cast<int>(std::floor(window.min().y() / res)));
  const Cell hi(static_cast<int>(std::ceil(window.max().x() / res)),
                static_cast<int>(std::ceil(window.max().y() / res)));
  const Cell extent = (hi - lo).cwiseMax(Cell::Zero());

  IntersectionArea::Mask mask = IntersectionArea::Mask::Constant(extent.x(), extent.y(), false);
  for (int b = 0; b < extent.y(); ++b) {
    for (int a = 0; a < extent.x(); ++a) {
      const Vec2 center = ((lo + Cell(a, b)).cast<double>().array() + 0.5).matrix() * res;
      if (!bounds.contains(center)) continue;
      mask(a, b) = std::all_of(discs.begin(), discs.end(), [&](const CoverageDisc& d) {
        return (center - d.center).squaredNorm() <= d.radius * d.radius;
      });
    }
  }
  return IntersectionArea(res, lo, std::move(mask));
}

IntersectionArea subtract_overlaps(const IntersectionArea& area,
                                   std::span<const IntersectionArea> earlier) {
  IntersectionArea::Mask mask = area.mask();
  for (Eigen::Index b = 0; b < mask.cols(); ++b) {
    for (Eigen::Index a = 0; a < mask.rows(); ++a) {
      if (!mask(a, b)) continue;
      const Cell cell = area.origin() + Cell(int(a), int(b));
      mask(a, b) = std::none_of(earlier.begin(), earlier.end(),
                                [&](const IntersectionArea& e) { return e.contains(cell); });
    }
  }
  return IntersectionArea(area.resolution(), area.origin(), std::move(mask));
}

AreaShape centroid_and_boundary(const IntersectionArea& area) {
  if (area.empty()) throw ValidationError("centroid of an empty intersection area");
  const auto cells = area.cells();

  Vec2 centroid = Vec2::Zero();
  for (const Cell& c : cells) centroid += area.cell_center(c);
  centroid /= static_cast<double>(cells.size());

  Eigen::Matrix2d moment = Eigen::Matrix2d::Zero();
  AreaShape shape{centroid, {}, std::numeric_limits<double>::infinity(), Vec2::UnitX()};
  for (const Cell& c : cells) {
    const Vec2 d = area.cell_center(c) - centroid;
    moment += d * d.transpose();
    const bool on_edge = !area.contains(c + Cell(1, 0)) || !area.contains(c - Cell(1, 0)) ||
                         !area.contains(c + Cell(0, 1)) || !area.contains(c - Cell(0, 1));
    if (on_edge) {
      shape.boundary.push_back(c);
      shape.min_dist = std::min(shape.min_dist, d.norm());
    }
  }

  // Isotropic sets (discs, squares) have no preferred axis; keep x.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(moment);
  const auto& values = solver.eigenvalues();
  if (values(1) - values(0) > 1e-9 * std::max(1.0, values(1))) {
    Vec2 axis = solver.eigenvectors().col(1).normalized();
    // Canonical sign so identical areas give identical trajectories.
    if (axis.x() < 0.0 || (axis.x() == 0.0 && axis.y() < 0.0)) axis = -axis;
    shape.principal_axis = axis;
  }
  return shape;
}

}  // namespace fapsim
