#include "cairn/geometry/ombb.hpp"

#include <cmath>

#include "cairn/geometry/min_rect.hpp"

namespace cairn {

namespace {

OMBB3 axis_aligned_fallback(const Region& r) {
  const auto b = kernels::active_ops().bounds3(r.points.xs(), r.points.ys(),
                                               r.points.zs(), r.points.size());
  OMBB3 box;
  box.center = Point3(0.5 * (b.lo[0] + b.hi[0]), 0.5 * (b.lo[1] + b.hi[1]),
                      0.5 * (b.lo[2] + b.hi[2]));
  box.axes = Eigen::Matrix3d::Identity();
  box.half_extents =
      Eigen::Vector3d(std::max(0.5 * (b.hi[0] - b.lo[0]), 1e-12),
                      std::max(0.5 * (b.hi[1] - b.lo[1]), 1e-12),
                      std::max(0.5 * (b.hi[2] - b.lo[2]), 1e-12));
  box.degenerate_fallback = true;
  return box;
}

}  // namespace

OMBB3 ombb_from_plane(const Region& r, const Plane& plane) {
  if (r.points.empty()) throw Error("ombb_from_plane: empty region");

  const Eigen::Vector3d n = plane.normal.normalized();
  const Eigen::Vector3d seed =
      std::abs(n.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d u = n.cross(seed).normalized();
  const Eigen::Vector3d v = n.cross(u);

  std::vector<Eigen::Vector2d> proj;
  proj.reserve(r.points.size());
  double nlo = std::numeric_limits<double>::infinity(), nhi = -nlo;
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const Point3 p = r.points[i];
    proj.emplace_back(u.dot(p), v.dot(p));
    const double h = n.dot(p);
    nlo = std::min(nlo, h);
    nhi = std::max(nhi, h);
  }

  const MinRect2 rect = min_area_rect(proj);
  if (rect.degenerate && rect.half_u <= 0.0) return axis_aligned_fallback(r);

  const Eigen::Vector3d a0 = u * rect.axis.x() + v * rect.axis.y();
  const Eigen::Vector3d a1 = n.cross(a0);

  OMBB3 box;
  box.axes.col(0) = a0;
  box.axes.col(1) = a1;
  box.axes.col(2) = n;
  box.center = u * rect.center.x() + v * rect.center.y() + n * (0.5 * (nlo + nhi));
  box.half_extents = Eigen::Vector3d(std::max(rect.half_u, 1e-12),
                                     std::max(rect.half_v, 1e-12),
                                     std::max(0.5 * (nhi - nlo), 1e-12));
  box.degenerate_fallback = rect.degenerate;
  return box;
}

}  // namespace cairn
