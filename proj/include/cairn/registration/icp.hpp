#pragma once

#include <map>
#include <vector>

#include "cairn/geometry/types.hpp"

namespace cairn {

struct IcpConfig {
  int max_iterations = 50;
  double convergence_delta = 1e-8;   // stop when the MSE change drops below
  double correspondence_cutoff = 0;  // 0 = auto: 3x median point spacing
};

struct RegistrationResult {
  RigidTransform transform;  // maps source into the target frame
  double mse = 0.0;          // mean squared distance over final matches
  int iterations = 0;
  std::vector<double> mse_history;
};

/// Point-to-point ICP: alternate kd-tree correspondence with the closed-form
/// least-squares rigid transform until the MSE settles. Throws
/// "registration diverged" when no correspondences survive the cutoff.
RegistrationResult icp(const PointBuffer& source, const PointBuffer& target,
                       const RigidTransform& init, const IcpConfig& cfg = {});

/// Least-squares rigid transform aligning src[i] -> dst[i]
/// (cross-covariance + SVD).
RigidTransform solve_rigid(const std::vector<Point3>& src,
                           const std::vector<Point3>& dst);

/// Concatenate views in the reference frame (first view). transforms[i] maps
/// view i+1 into the reference frame. label_maps[i] renames view i+1 labels
/// to canonical ids; labels without an entry get fresh ids.
LabeledPointCloud fuse_views(const std::vector<LabeledPointCloud>& views,
                             const std::vector<RigidTransform>& transforms,
                             const std::vector<std::map<int, int>>& label_maps = {});

}  // namespace cairn
