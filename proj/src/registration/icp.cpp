#include "cairn/registration/icp.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <set>

#include "cairn/registration/kdtree.hpp"

namespace cairn {

RigidTransform solve_rigid(const std::vector<Point3>& src,
                           const std::vector<Point3>& dst) {
  if (src.size() != dst.size() || src.size() < 3)
    throw Error("solve_rigid: need >= 3 paired points");
  Point3 cs = Point3::Zero(), cd = Point3::Zero();
  for (std::size_t i = 0; i < src.size(); ++i) {
    cs += src[i];
    cd += dst[i];
  }
  cs /= static_cast<double>(src.size());
  cd /= static_cast<double>(dst.size());
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < src.size(); ++i)
    h += (src[i] - cs) * (dst[i] - cd).transpose();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d r = svd.matrixV() * svd.matrixU().transpose();
  if (r.determinant() < 0) {
    Eigen::Matrix3d v = svd.matrixV();
    v.col(2) *= -1.0;
    r = v * svd.matrixU().transpose();
  }
  return {r, cd - r * cs};
}

RegistrationResult icp(const PointBuffer& source, const PointBuffer& target,
                       const RigidTransform& init, const IcpConfig& cfg) {
  if (source.empty() || target.empty())
    throw Error("icp: empty point set");

  const KdTree tree(target);
  double cutoff = cfg.correspondence_cutoff;
  if (cutoff <= 0) cutoff = 3.0 * tree.median_spacing();
  if (cutoff <= 0) cutoff = std::numeric_limits<double>::infinity();
  const double cutoff2 = cutoff * cutoff;

  RegistrationResult out;
  out.transform = init;
  double prev_mse = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    const PointBuffer moved = source.transformed(out.transform);

    std::vector<Point3> src, dst;
    src.reserve(moved.size());
    dst.reserve(moved.size());
    double sq_sum = 0.0;
    for (std::size_t i = 0; i < moved.size(); ++i) {
      const Point3 p = moved[i];
      const auto hit = tree.nearest(p);
      if (hit.dist2 > cutoff2) continue;
      src.push_back(source[i]);
      dst.push_back(target[hit.index]);
      sq_sum += hit.dist2;
    }
    if (src.size() < 3) throw Error("registration diverged");

    const double mse = sq_sum / static_cast<double>(src.size());
    out.mse = mse;
    out.mse_history.push_back(mse);
    out.iterations = iter + 1;

    if (std::abs(prev_mse - mse) < cfg.convergence_delta) break;
    prev_mse = mse;

    out.transform = solve_rigid(src, dst);
  }
  return out;
}

LabeledPointCloud fuse_views(const std::vector<LabeledPointCloud>& views,
                             const std::vector<RigidTransform>& transforms,
                             const std::vector<std::map<int, int>>& label_maps) {
  if (views.empty()) throw Error("fuse_views: no views");
  if (transforms.size() != views.size() - 1)
    throw Error("fuse_views: need one transform per non-reference view");
  if (!label_maps.empty() && label_maps.size() != views.size() - 1)
    throw Error("fuse_views: need one label map per non-reference view");

  LabeledPointCloud fused;
  fused.view_id = "fused";
  fused.view_pose = views.front().view_pose;

  std::map<int, Region> by_label;
  int next_label = 0;
  for (const auto& r : views.front().regions) {
    by_label[r.label].label = r.label;
    by_label[r.label].points.append(r.points);
    next_label = std::max(next_label, r.label + 1);
  }
  for (std::size_t v = 1; v < views.size(); ++v) {
    const auto* map = label_maps.empty() ? nullptr : &label_maps[v - 1];
    for (const auto& r : views[v].regions) {
      int label = r.label;
      if (map) {
        const auto it = map->find(r.label);
        label = it != map->end() ? it->second : next_label++;
      }
      by_label[label].label = label;
      by_label[label].points.append(r.points.transformed(transforms[v - 1]));
      next_label = std::max(next_label, label + 1);
    }
  }
  for (auto& [label, region] : by_label) fused.regions.push_back(std::move(region));
  return fused;
}

}  // namespace cairn
