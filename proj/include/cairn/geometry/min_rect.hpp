#pragma once

#include <Eigen/Core>
#include <vector>

namespace cairn {

/// Minimum-area rectangle of a 2D point set (rotating calipers over the
/// convex hull). `axis` is the unit direction of the first extent; the second
/// axis is its counter-clockwise perpendicular.
struct MinRect2 {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  Eigen::Vector2d axis = Eigen::Vector2d::UnitX();
  double half_u = 0.0;
  double half_v = 0.0;
  bool degenerate = false;  // hull collapsed to a point or segment

  std::array<Eigen::Vector2d, 4> corners() const {
    const Eigen::Vector2d u = axis;
    const Eigen::Vector2d v(-axis.y(), axis.x());
    return {center - u * half_u - v * half_v, center + u * half_u - v * half_v,
            center + u * half_u + v * half_v, center - u * half_u + v * half_v};
  }

  double area() const { return 4.0 * half_u * half_v; }
};

/// Monotone-chain convex hull, counter-clockwise, no repeated last point.
std::vector<Eigen::Vector2d> convex_hull(std::vector<Eigen::Vector2d> pts);

MinRect2 min_area_rect(const std::vector<Eigen::Vector2d>& pts);

}  // namespace cairn
