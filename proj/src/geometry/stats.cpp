#include "cairn/geometry/stats.hpp"

#include <cmath>

namespace cairn {

Point3 region_centroid(const Region& r) {
  if (r.points.empty()) throw Error("region_centroid: empty region");
  double sums[3];
  kernels::active_ops().sum3(r.points.xs(), r.points.ys(), r.points.zs(),
                             r.points.size(), sums);
  const double inv = 1.0 / static_cast<double>(r.points.size());
  return {sums[0] * inv, sums[1] * inv, sums[2] * inv};
}

double region_radius(const Region& r) {
  const Point3 c = region_centroid(r);  // throws on empty
  const double cc[3] = {c.x(), c.y(), c.z()};
  return std::sqrt(kernels::active_ops().max_dist2(
      r.points.xs(), r.points.ys(), r.points.zs(), r.points.size(), cc));
}

MBR2 project_mbr(const Region& r) {
  if (r.points.empty()) throw Error("project_mbr: empty region");
  const auto b = kernels::active_ops().bounds3(r.points.xs(), r.points.ys(),
                                               r.points.zs(), r.points.size());
  return {b.lo[0], b.hi[0], b.lo[1], b.hi[1]};
}

}  // namespace cairn
