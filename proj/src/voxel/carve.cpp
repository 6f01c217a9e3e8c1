#include "cairn/voxel/carve.hpp"

#include <cmath>
#include <map>
#include <unordered_map>

#include "cairn/registration/icp.hpp"

namespace cairn {

namespace {

struct KeyHash {
  std::size_t operator()(const VoxelKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.x) * 73856093u;
    h ^= static_cast<std::size_t>(k.y) * 19349663u;
    h ^= static_cast<std::size_t>(k.z) * 83492791u;
    return h;
  }
};

// Amanatides & Woo grid traversal from `from` towards `to`, stopping before
// the voxel containing `to`; visits only in-bounds voxels.
template <typename Fn>
void walk_ray(const VoxelScene& scene, const Point3& from, const Point3& to,
              Fn&& visit) {
  const double vs = scene.voxel_size();
  const VoxelKey target = scene.key_of(to);
  const Eigen::Vector3d dir = to - from;
  const double len = dir.norm();
  if (len < 1e-12) return;

  // clip the segment to the grid box
  const Eigen::Vector3d box_lo = scene.lo_voxel().cast<double>() * vs;
  const Eigen::Vector3d box_hi =
      (scene.lo_voxel() + scene.dims()).cast<double>() * vs;
  double t0 = 0.0, t1 = 1.0;
  for (int a = 0; a < 3; ++a) {
    if (std::abs(dir[a]) < 1e-15) {
      if (from[a] < box_lo[a] || from[a] > box_hi[a]) return;
      continue;
    }
    double ta = (box_lo[a] - from[a]) / dir[a];
    double tb = (box_hi[a] - from[a]) / dir[a];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
  }
  if (t0 >= t1) return;

  const Point3 entry = from + (t0 + 1e-12) * dir;
  VoxelKey cur = scene.key_of(entry);
  int step[3], cell[3] = {cur.x, cur.y, cur.z};
  double t_max[3], t_delta[3];
  for (int a = 0; a < 3; ++a) {
    if (dir[a] > 1e-15) {
      step[a] = 1;
      t_delta[a] = vs / dir[a];
      t_max[a] = ((cell[a] + 1) * vs - from[a]) / dir[a];
    } else if (dir[a] < -1e-15) {
      step[a] = -1;
      t_delta[a] = -vs / dir[a];
      t_max[a] = (cell[a] * vs - from[a]) / dir[a];
    } else {
      step[a] = 0;
      t_delta[a] = std::numeric_limits<double>::infinity();
      t_max[a] = std::numeric_limits<double>::infinity();
    }
  }

  const int max_steps = scene.dims().sum() + 6;
  for (int i = 0; i < max_steps; ++i) {
    cur = {cell[0], cell[1], cell[2]};
    if (cur == target) return;
    if (!scene.in_bounds(cur)) return;
    visit(cur);
    int a = 0;
    if (t_max[1] < t_max[a]) a = 1;
    if (t_max[2] < t_max[a]) a = 2;
    if (t_max[a] >= 1.0) return;  // next crossing is past the point
    cell[a] += step[a];
    t_max[a] += t_delta[a];
  }
}

}  // namespace

VoxelScene carve(const std::vector<LabeledPointCloud>& views,
                 const std::vector<RigidTransform>& transforms,
                 double voxel_size) {
  if (views.empty()) throw Error("carve: no views");
  bool any_points = false;
  for (const auto& v : views)
    for (const auto& r : v.regions)
      if (!r.points.empty()) any_points = true;
  if (!any_points) throw Error("carve: views contain no points");

  const LabeledPointCloud fused = fuse_views(views, transforms);

  kernels::Bounds3 bounds{{1e300, 1e300, 1e300}, {-1e300, -1e300, -1e300}};
  for (const auto& r : fused.regions) {
    const auto b = kernels::active_ops().bounds3(r.points.xs(), r.points.ys(),
                                                 r.points.zs(), r.points.size());
    for (int a = 0; a < 3; ++a) {
      bounds.lo[a] = std::min(bounds.lo[a], b.lo[a]);
      bounds.hi[a] = std::max(bounds.hi[a], b.hi[a]);
    }
  }
  bounds.lo[2] = std::min(bounds.lo[2], 0.0);  // grid always reaches the ground

  if (voxel_size <= 0) {
    const double dx = bounds.hi[0] - bounds.lo[0];
    const double dy = bounds.hi[1] - bounds.lo[1];
    const double dz = bounds.hi[2] - bounds.lo[2];
    voxel_size = std::sqrt(dx * dx + dy * dy + dz * dz) / 64.0;
    if (voxel_size <= 0) throw Error("carve: degenerate scene bounds");
  }

  Eigen::Vector3i lo, hi;
  for (int a = 0; a < 3; ++a) {
    lo[a] = static_cast<int>(std::floor(bounds.lo[a] / voxel_size)) - 1;
    hi[a] = static_cast<int>(std::floor(bounds.hi[a] / voxel_size)) + 2;
  }
  VoxelScene scene(voxel_size, lo, hi - lo);

  // occupied voxels by majority label vote
  std::unordered_map<VoxelKey, std::map<int, int>, KeyHash> votes;
  for (const auto& r : fused.regions) {
    for (std::size_t i = 0; i < r.points.size(); ++i)
      ++votes[scene.key_of(r.points[i])][r.label];
    scene.mutable_points(r.label).append(r.points);
  }
  for (const auto& [key, tally] : votes) {
    int best_label = -1, best_count = 0;
    for (const auto& [label, count] : tally)
      if (count > best_count) {  // std::map order makes ties pick the smaller
        best_count = count;
        best_label = label;
      }
    scene.set_occupied(key, best_label);
  }

  // free-space carving along every camera-to-point ray
  for (std::size_t v = 0; v < views.size(); ++v) {
    const RigidTransform to_ref =
        v == 0 ? RigidTransform::identity() : transforms[v - 1];
    const Point3 cam = to_ref * views[v].view_pose.translation;
    for (const auto& r : views[v].regions) {
      const PointBuffer moved = r.points.transformed(to_ref);
      for (std::size_t i = 0; i < moved.size(); ++i)
        walk_ray(scene, cam, moved[i],
                 [&](const VoxelKey& k) { scene.set_free(k); });
    }
  }
  return scene;
}

}  // namespace cairn
