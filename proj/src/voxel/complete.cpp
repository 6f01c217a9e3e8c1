#include "cairn/voxel/complete.hpp"

#include <algorithm>
#include <cmath>

#include "cairn/geometry/ombb.hpp"
#include "cairn/io/log.hpp"

namespace cairn {

CompletionReport complete_object(VoxelScene& scene, int label) {
  CompletionReport report;
  report.label = label;

  const PointBuffer& pts = scene.points(label);
  if (pts.size() < 3) {
    log::warn("completion skipped for label %d: %zu points", label, pts.size());
    report.skipped = true;
    return report;
  }

  RansacConfig cfg;
  cfg.inlier_threshold = 2.0 * scene.voxel_size();
  OMBB3 box;
  try {
    const auto fit = ransac_plane(pts, cfg);
    box = ombb_from_plane(Region{label, pts}, fit.plane);
  } catch (const Error& e) {
    log::warn("completion skipped for label %d: %s", label, e.what());
    report.skipped = true;
    return report;
  }
  report.ombb_fallback = box.degenerate_fallback;

  // only hidden voxels inside the box are claimed; scan its bounding range
  Eigen::Vector3d blo = box.center, bhi = box.center;
  for (const auto& c : box.corners()) {
    blo = blo.cwiseMin(c);
    bhi = bhi.cwiseMax(c);
  }
  const double vs = scene.voxel_size();
  const VoxelKey klo = scene.key_of(blo);
  const VoxelKey khi = scene.key_of(bhi);
  for (int x = klo.x; x <= khi.x; ++x)
    for (int y = klo.y; y <= khi.y; ++y)
      for (int z = klo.z; z <= khi.z; ++z) {
        const VoxelKey k{x, y, z};
        if (!scene.in_bounds(k)) continue;
        if (scene.state(k) != VoxelState::hidden) continue;
        if (!box.contains(scene.center_of(k))) continue;
        scene.set_occupied(k, label);
        ++report.claimed;
      }
  (void)vs;
  return report;
}

std::vector<CompletionReport> complete_all(VoxelScene& scene) {
  std::vector<int> labels = scene.labels();
  std::sort(labels.begin(), labels.end(), [&](int a, int b) {
    const auto ca = scene.occupied_count(a), cb = scene.occupied_count(b);
    return ca != cb ? ca > cb : a < b;
  });
  std::vector<CompletionReport> out;
  out.reserve(labels.size());
  for (int label : labels) out.push_back(complete_object(scene, label));
  return out;
}

}  // namespace cairn
