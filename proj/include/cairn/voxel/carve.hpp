#pragma once

#include "cairn/geometry/types.hpp"
#include "cairn/voxel/voxel_scene.hpp"

namespace cairn {

/// Fuse registered views into an occupancy grid. Voxels holding fused points
/// become occupied (label by majority vote); voxels crossed by any
/// camera-to-point ray before the point become free (free-space observations
/// from any view win over hidden); whatever remains inside the scene bounds
/// is hidden. Labels must already be canonical across views. transforms[i]
/// maps view i+1 into the frame of view 0; voxel_size <= 0 picks
/// scene-diameter / 64.
VoxelScene carve(const std::vector<LabeledPointCloud>& views,
                 const std::vector<RigidTransform>& transforms,
                 double voxel_size = 0.0);

}  // namespace cairn
