#pragma once

#include "cairn/voxel/voxel_scene.hpp"

namespace cairn {

struct CompletionReport {
  int label = -1;
  std::size_t claimed = 0;   // hidden voxels reassigned to the object
  bool skipped = false;      // degenerate object, nothing done
  bool ombb_fallback = false;
};

/// Claim every hidden voxel whose center falls inside the object's oriented
/// bounding box (largest RANSAC plane anchored). Free voxels are never
/// touched; occupied voxels keep their first owner.
CompletionReport complete_object(VoxelScene& scene, int label);

/// Complete all objects, largest visible volume first (first claim wins on
/// overlapping boxes).
std::vector<CompletionReport> complete_all(VoxelScene& scene);

}  // namespace cairn
