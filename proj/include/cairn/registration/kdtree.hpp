#pragma once

#include <cstdint>
#include <vector>

#include "cairn/geometry/types.hpp"

namespace cairn {

/// Median-split kd-tree over a point buffer. Leaf buckets stay contiguous in
/// a reordered structure-of-arrays copy so leaf scans run through the
/// nearest-point kernel.
class KdTree {
 public:
  explicit KdTree(const PointBuffer& points, int leaf_size = 16);

  std::size_t size() const { return pts_.size(); }

  /// Index (into the original buffer) and squared distance of the nearest
  /// point to q.
  kernels::Nearest nearest(const Point3& q) const;

  /// Median nearest-neighbor spacing estimated from a deterministic sample.
  double median_spacing(std::size_t sample = 500) const;

 private:
  struct Node {
    double split = 0.0;
    std::int32_t axis = -1;  // -1 marks a leaf
    std::uint32_t left = 0, right = 0;    // children when internal
    std::uint32_t begin = 0, end = 0;     // bucket range when leaf
  };

  std::uint32_t build(std::uint32_t begin, std::uint32_t end);
  void search(std::uint32_t node, const double q[3], kernels::Nearest& best) const;
  void search_excluding(std::uint32_t node, const double q[3],
                        std::uint32_t excluded, kernels::Nearest& best) const;

  PointBuffer pts_;                  // reordered
  std::vector<std::uint32_t> ids_;   // reordered index -> original index
  std::vector<Node> nodes_;
  std::uint32_t root_ = 0;
  int leaf_size_;
};

}  // namespace cairn
