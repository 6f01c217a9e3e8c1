#include "cairn/voxel/voxel_scene.hpp"

#include <cmath>

namespace cairn {

SparseOctree::SparseOctree(int depth) : depth_(depth) {
  nodes_.emplace_back();
}

void SparseOctree::set(int x, int y, int z, const Leaf& leaf) {
  std::int32_t node = 0;
  for (int level = depth_ - 1; level >= 0; --level) {
    const int octant = (((x >> level) & 1) << 2) | (((y >> level) & 1) << 1) |
                       ((z >> level) & 1);
    std::int32_t& slot = nodes_[node].child[octant];
    if (level == 0) {
      if (slot < 0) {
        slot = static_cast<std::int32_t>(leaves_.size());
        leaves_.push_back(leaf);
      } else {
        leaves_[slot] = leaf;
      }
      return;
    }
    if (slot < 0) {
      slot = static_cast<std::int32_t>(nodes_.size());
      nodes_.emplace_back();
    }
    node = slot;
  }
}

const SparseOctree::Leaf* SparseOctree::find(int x, int y, int z) const {
  std::int32_t node = 0;
  for (int level = depth_ - 1; level >= 0; --level) {
    const int octant = (((x >> level) & 1) << 2) | (((y >> level) & 1) << 1) |
                       ((z >> level) & 1);
    const std::int32_t slot = nodes_[node].child[octant];
    if (slot < 0) return nullptr;
    if (level == 0) return &leaves_[slot];
    node = slot;
  }
  return nullptr;
}

void SparseOctree::for_each(
    const std::function<void(int, int, int, const Leaf&)>& fn) const {
  struct Frame {
    std::int32_t node;
    int x, y, z, level;
  };
  std::vector<Frame> stack{{0, 0, 0, 0, depth_}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    for (int octant = 0; octant < 8; ++octant) {
      const std::int32_t slot = nodes_[f.node].child[octant];
      if (slot < 0) continue;
      const int level = f.level - 1;
      const int x = f.x | (((octant >> 2) & 1) << level);
      const int y = f.y | (((octant >> 1) & 1) << level);
      const int z = f.z | ((octant & 1) << level);
      if (level == 0)
        fn(x, y, z, leaves_[slot]);
      else
        stack.push_back({slot, x, y, z, level});
    }
  }
}

namespace {
int depth_for(const Eigen::Vector3i& dims) {
  int d = 1;
  while ((1 << d) < dims.maxCoeff()) ++d;
  return d;
}
}  // namespace

VoxelScene::VoxelScene(double voxel_size, const Eigen::Vector3i& lo_voxel,
                       const Eigen::Vector3i& dims)
    : voxel_size_(voxel_size), lo_(lo_voxel), dims_(dims),
      tree_(depth_for(dims)) {
  if (voxel_size <= 0) throw Error("VoxelScene: voxel size must be positive");
  if ((dims.array() <= 0).any()) throw Error("VoxelScene: empty bounds");
}

VoxelKey VoxelScene::key_of(const Point3& p) const {
  return {static_cast<int>(std::floor(p.x() / voxel_size_)),
          static_cast<int>(std::floor(p.y() / voxel_size_)),
          static_cast<int>(std::floor(p.z() / voxel_size_))};
}

Point3 VoxelScene::center_of(const VoxelKey& k) const {
  return {(k.x + 0.5) * voxel_size_, (k.y + 0.5) * voxel_size_,
          (k.z + 0.5) * voxel_size_};
}

bool VoxelScene::in_bounds(const VoxelKey& k) const {
  return k.x >= lo_.x() && k.x < lo_.x() + dims_.x() && k.y >= lo_.y() &&
         k.y < lo_.y() + dims_.y() && k.z >= lo_.z() && k.z < lo_.z() + dims_.z();
}

VoxelState VoxelScene::state(const VoxelKey& k) const {
  if (!in_bounds(k)) return VoxelState::free;
  const auto* leaf = tree_.find(k.x - lo_.x(), k.y - lo_.y(), k.z - lo_.z());
  return leaf ? leaf->state : VoxelState::hidden;
}

int VoxelScene::occupied_label(const VoxelKey& k) const {
  if (!in_bounds(k)) return -1;
  const auto* leaf = tree_.find(k.x - lo_.x(), k.y - lo_.y(), k.z - lo_.z());
  return leaf && leaf->state == VoxelState::occupied ? leaf->label : -1;
}

void VoxelScene::set_occupied(const VoxelKey& k, int label) {
  if (!in_bounds(k)) return;
  const int x = k.x - lo_.x(), y = k.y - lo_.y(), z = k.z - lo_.z();
  const auto* leaf = tree_.find(x, y, z);
  if (leaf) {
    if (leaf->state == VoxelState::occupied) {
      if (leaf->label == label) return;
      --occupied_counts_[leaf->label];
    } else {
      --free_count_;
    }
  }
  tree_.set(x, y, z, {VoxelState::occupied, label});
  ++occupied_counts_[label];
}

void VoxelScene::set_free(const VoxelKey& k) {
  if (!in_bounds(k)) return;
  const int x = k.x - lo_.x(), y = k.y - lo_.y(), z = k.z - lo_.z();
  const auto* leaf = tree_.find(x, y, z);
  if (leaf) return;  // occupied stays occupied, free stays free
  tree_.set(x, y, z, {VoxelState::free, -1});
  ++free_count_;
}

void VoxelScene::for_each_occupied(
    const std::function<void(const VoxelKey&, int)>& fn) const {
  tree_.for_each([&](int x, int y, int z, const SparseOctree::Leaf& leaf) {
    if (leaf.state == VoxelState::occupied)
      fn({x + lo_.x(), y + lo_.y(), z + lo_.z()}, leaf.label);
  });
}

std::vector<int> VoxelScene::labels() const {
  std::vector<int> out;
  for (const auto& [label, count] : occupied_counts_)
    if (count > 0) out.push_back(label);
  return out;
}

std::size_t VoxelScene::occupied_count(int label) const {
  const auto it = occupied_counts_.find(label);
  return it == occupied_counts_.end() ? 0 : it->second;
}

std::size_t VoxelScene::hidden_count() const {
  std::size_t total = static_cast<std::size_t>(dims_.x()) * dims_.y() * dims_.z();
  std::size_t occupied = 0;
  for (const auto& [label, count] : occupied_counts_) occupied += count;
  return total - occupied - free_count_;
}

std::size_t VoxelScene::free_count() const { return free_count_; }

double VoxelScene::object_volume(int label) const {
  return static_cast<double>(occupied_count(label)) * voxel_size_ * voxel_size_ *
         voxel_size_;
}

Point3 VoxelScene::object_centroid(int label) const {
  Point3 sum = Point3::Zero();
  std::size_t n = 0;
  for_each_occupied([&](const VoxelKey& k, int l) {
    if (l != label) return;
    sum += center_of(k);
    ++n;
  });
  if (n == 0) throw Error("object_centroid: label has no occupied voxels");
  return sum / static_cast<double>(n);
}

const PointBuffer& VoxelScene::points(int label) const {
  static const PointBuffer empty;
  const auto it = points_.find(label);
  return it == points_.end() ? empty : it->second;
}

}  // namespace cairn
