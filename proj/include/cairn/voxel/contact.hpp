#pragma once

#include <array>
#include <set>

#include "cairn/voxel/voxel_scene.hpp"

namespace cairn {

/// Planar contact patch between two objects (or ground and an object):
/// the minimum oriented rectangle of the interface, its four corners used as
/// contact points, normal oriented from a into b.
struct ContactRegion {
  int a = kGroundLabel;
  int b = -1;
  std::array<Point3, 4> points;
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  bool degenerate = false;  // centroid fallback (fewer than 3 interface voxels)
};

/// Undirected adjacency between objects; the ground node (label 0) joins
/// every object with occupied voxels in the z=0 layer.
struct ContactGraph {
  std::set<int> nodes;
  std::set<std::pair<int, int>> edges;  // normalized a < b

  bool adjacent(int a, int b) const {
    return edges.count({std::min(a, b), std::max(a, b)}) > 0;
  }
};

/// 26-adjacency of occupied voxels of distinct labels.
ContactGraph contact_graph(const VoxelScene& scene);

/// Contact patch for an adjacent pair: least-squares plane through the
/// interface voxel centers, minimum-area rectangle of their projections.
/// Ground contacts use the exact z=0 plane.
ContactRegion contact_region(const VoxelScene& scene, int a, int b);

/// Regions for every contact-graph edge, deterministic order.
std::vector<ContactRegion> contact_regions(const VoxelScene& scene,
                                           const ContactGraph& graph);

}  // namespace cairn
