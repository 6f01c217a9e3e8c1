#include "cairn/geometry/ransac.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

namespace cairn {

namespace {

Plane hessian(const Eigen::Vector3d& n_raw, const Point3& through) {
  Plane p;
  p.normal = n_raw.normalized();
  p.offset = -p.normal.dot(through);
  return p;
}

std::vector<std::uint32_t> inliers_of(const PointBuffer& pts, const Plane& p,
                                      double thr) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < pts.size(); ++i)
    if (std::abs(p.signed_distance(pts[i])) <= thr) out.push_back(i);
  return out;
}

}  // namespace

Plane fit_plane(const PointBuffer& points) {
  if (points.size() < 3) throw Error("fit_plane: need at least 3 points");
  double sums[3];
  kernels::active_ops().sum3(points.xs(), points.ys(), points.zs(), points.size(), sums);
  const Point3 c(sums[0] / points.size(), sums[1] / points.size(),
                 sums[2] / points.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Eigen::Vector3d d = points[i] - c;
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  const Eigen::Vector3d n = es.eigenvectors().col(0);
  if (es.eigenvalues()(1) <= 1e-18 * std::max(1.0, es.eigenvalues()(2)))
    throw Error("fit_plane: degenerate (collinear) point set");
  return hessian(n, c);
}

RansacPlaneResult ransac_plane(const PointBuffer& points, const RansacConfig& cfg) {
  const std::size_t n = points.size();
  if (n < 3) throw Error("ransac_plane: need at least 3 points");

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);

  const double plane_scale = [&] {
    const auto b = kernels::active_ops().bounds3(points.xs(), points.ys(),
                                                 points.zs(), n);
    double s = 0;
    for (int k = 0; k < 3; ++k) s = std::max(s, b.hi[k] - b.lo[k]);
    return std::max(s, 1e-12);
  }();

  RansacPlaneResult best;
  std::size_t best_count = 0;

  auto consider = [&](const Plane& cand) {
    double pl[4] = {cand.normal.x(), cand.normal.y(), cand.normal.z(), cand.offset};
    const std::size_t count = kernels::active_ops().plane_inliers(
        points.xs(), points.ys(), points.zs(), n, pl, cfg.inlier_threshold);
    ++best.candidates_tried;
    if (count > best_count) {  // strict: ties keep the first maximal candidate
      best_count = count;
      best.plane = cand;
    }
  };

  if (n == 3) {
    const Eigen::Vector3d u = points[1] - points[0];
    const Eigen::Vector3d v = points[2] - points[0];
    const Eigen::Vector3d cr = u.cross(v);
    if (cr.norm() <= 1e-12 * plane_scale * plane_scale)
      throw Error("ransac_plane: degenerate (collinear) point set");
    consider(hessian(cr, points[0]));
  } else {
    int produced = 0;
    int attempts = 0;
    const int max_attempts = cfg.iterations * 20;
    while (produced < cfg.iterations && attempts < max_attempts) {
      ++attempts;
      const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
      if (i == j || j == k || i == k) continue;
      const Eigen::Vector3d cr = (points[j] - points[i]).cross(points[k] - points[i]);
      if (cr.norm() <= 1e-12 * plane_scale * plane_scale) continue;
      consider(hessian(cr, points[i]));
      ++produced;
    }
    if (produced == 0)
      throw Error("ransac_plane: degenerate (collinear) point set");
  }

  best.inliers = inliers_of(points, best.plane, cfg.inlier_threshold);

  if (cfg.refine && best.inliers.size() >= 3) {
    PointBuffer sel;
    sel.reserve(best.inliers.size());
    for (auto i : best.inliers) sel.push_back(points[i]);
    try {
      Plane refined = fit_plane(sel);
      // keep orientation consistent with the sampled plane
      if (refined.normal.dot(best.plane.normal) < 0) {
        refined.normal = -refined.normal;
        refined.offset = -refined.offset;
      }
      const auto refined_inliers = inliers_of(points, refined, cfg.inlier_threshold);
      if (refined_inliers.size() >= best.inliers.size()) {
        best.plane = refined;
        best.inliers = refined_inliers;
      }
    } catch (const Error&) {
      // refit degenerate; keep the sampled plane
    }
  }
  return best;
}

}  // namespace cairn
