#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "cairn/geometry/types.hpp"

namespace cairn {

inline constexpr int kGroundLabel = 0;

enum class VoxelState : std::uint8_t { free = 0, hidden = 1, occupied = 2 };

struct VoxelKey {
  int x = 0, y = 0, z = 0;
  auto operator<=>(const VoxelKey&) const = default;
};

/// Sparse octree over a cubic power-of-two index range; leaves carry the
/// explicit voxel states (occupied with label, or observed-free).
class SparseOctree {
 public:
  struct Leaf {
    VoxelState state = VoxelState::free;
    int label = -1;
  };

  explicit SparseOctree(int depth);

  void set(int x, int y, int z, const Leaf& leaf);
  const Leaf* find(int x, int y, int z) const;
  void for_each(const std::function<void(int, int, int, const Leaf&)>& fn) const;

  int depth() const { return depth_; }
  int extent() const { return 1 << depth_; }

 private:
  struct Node {
    std::int32_t child[8] = {-1, -1, -1, -1, -1, -1, -1, -1};
  };
  std::vector<Node> nodes_;
  std::vector<Leaf> leaves_;
  int depth_;
};

/// Octree-backed occupancy fused over all registered views. Every voxel
/// inside the scene bounds is exactly one of occupied(label) / free / hidden;
/// hidden is the complement of the stored states. Fused per-object point
/// clouds ride along for plane fitting and completion.
class VoxelScene {
 public:
  VoxelScene(double voxel_size, const Eigen::Vector3i& lo_voxel,
             const Eigen::Vector3i& dims);

  double voxel_size() const { return voxel_size_; }
  const Eigen::Vector3i& dims() const { return dims_; }
  const Eigen::Vector3i& lo_voxel() const { return lo_; }

  VoxelKey key_of(const Point3& p) const;
  Point3 center_of(const VoxelKey& k) const;
  bool in_bounds(const VoxelKey& k) const;
  /// Voxel layer containing world z in [0, voxel_size); objects occupying it
  /// touch the ground.
  bool in_ground_layer(const VoxelKey& k) const { return k.z == 0; }

  VoxelState state(const VoxelKey& k) const;
  int occupied_label(const VoxelKey& k) const;  // -1 unless occupied

  void set_occupied(const VoxelKey& k, int label);
  /// Free never displaces an occupied voxel.
  void set_free(const VoxelKey& k);

  void for_each_occupied(
      const std::function<void(const VoxelKey&, int label)>& fn) const;

  std::vector<int> labels() const;  // occupied labels, sorted
  std::size_t occupied_count(int label) const;
  std::size_t hidden_count() const;
  std::size_t free_count() const;

  double object_volume(int label) const;     // voxel count * voxel^3
  Point3 object_centroid(int label) const;   // mean occupied voxel center

  const PointBuffer& points(int label) const;
  PointBuffer& mutable_points(int label) { return points_[label]; }

 private:
  double voxel_size_;
  Eigen::Vector3i lo_;    // global voxel coordinate of the grid corner
  Eigen::Vector3i dims_;
  SparseOctree tree_;
  std::map<int, std::size_t> occupied_counts_;
  std::size_t free_count_ = 0;
  std::map<int, PointBuffer> points_;
};

}  // namespace cairn
