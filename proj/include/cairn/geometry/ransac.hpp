#pragma once

#include <cstdint>
#include <vector>

#include "cairn/geometry/types.hpp"

namespace cairn {

struct RansacConfig {
  int iterations = 500;
  double inlier_threshold = 0.01;  // meters; callers usually pass 2x voxel size
  bool refine = true;              // least-squares refit over inliers
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
};

struct RansacPlaneResult {
  Plane plane;
  std::vector<std::uint32_t> inliers;
  int candidates_tried = 0;
};

/// Largest-plane fit by random sampling; ties keep the first maximal
/// candidate. Throws when fewer than 3 points or all points are collinear.
RansacPlaneResult ransac_plane(const PointBuffer& points, const RansacConfig& cfg);

/// Least-squares plane through all points (PCA smallest axis).
Plane fit_plane(const PointBuffer& points);

}  // namespace cairn
