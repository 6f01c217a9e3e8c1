#include "cairn/geometry/min_rect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cairn {

namespace {
double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a,
              const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}
}  // namespace

std::vector<Eigen::Vector2d> convex_hull(std::vector<Eigen::Vector2d> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) { return a == b; }),
            pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;

  std::vector<Eigen::Vector2d> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
    while (k >= t && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

MinRect2 min_area_rect(const std::vector<Eigen::Vector2d>& pts) {
  MinRect2 out;
  if (pts.empty()) {
    out.degenerate = true;
    return out;
  }
  const auto hull = convex_hull(pts);

  if (hull.size() == 1) {
    out.center = hull[0];
    out.degenerate = true;
    return out;
  }
  if (hull.size() == 2) {
    const Eigen::Vector2d d = hull[1] - hull[0];
    out.center = 0.5 * (hull[0] + hull[1]);
    out.axis = d.normalized();
    out.half_u = 0.5 * d.norm();
    out.half_v = 0.0;
    out.degenerate = true;
    return out;
  }

  double best_area = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < hull.size(); ++e) {
    const Eigen::Vector2d edge = hull[(e + 1) % hull.size()] - hull[e];
    const double len = edge.norm();
    if (len < 1e-15) continue;
    const Eigen::Vector2d u = edge / len;
    const Eigen::Vector2d v(-u.y(), u.x());
    double ulo = std::numeric_limits<double>::infinity(), uhi = -ulo;
    double vlo = ulo, vhi = -ulo;
    for (const auto& p : hull) {
      const double pu = u.dot(p), pv = v.dot(p);
      ulo = std::min(ulo, pu);
      uhi = std::max(uhi, pu);
      vlo = std::min(vlo, pv);
      vhi = std::max(vhi, pv);
    }
    const double area = (uhi - ulo) * (vhi - vlo);
    if (area < best_area) {
      best_area = area;
      out.axis = u;
      out.half_u = 0.5 * (uhi - ulo);
      out.half_v = 0.5 * (vhi - vlo);
      out.center = u * (0.5 * (ulo + uhi)) + v * (0.5 * (vlo + vhi));
    }
  }
  out.degenerate = !(best_area < std::numeric_limits<double>::infinity());
  return out;
}

}  // namespace cairn
