#include "cairn/registration/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cairn {

KdTree::KdTree(const PointBuffer& points, int leaf_size)
    : leaf_size_(std::max(leaf_size, 4)) {
  if (points.empty()) throw Error("KdTree: empty point set");
  ids_.resize(points.size());
  std::iota(ids_.begin(), ids_.end(), 0u);

  // sort indices recursively, then materialize the reordered SoA copy
  pts_ = points;
  nodes_.reserve(2 * points.size() / leaf_size_ + 4);
  root_ = build(0, static_cast<std::uint32_t>(points.size()));

  PointBuffer reordered;
  reordered.reserve(points.size());
  for (auto id : ids_) reordered.push_back(points[id]);
  pts_ = std::move(reordered);
}

std::uint32_t KdTree::build(std::uint32_t begin, std::uint32_t end) {
  Node node;
  node.begin = begin;
  node.end = end;
  if (end - begin <= static_cast<std::uint32_t>(leaf_size_)) {
    nodes_.push_back(node);
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }
  double lo[3] = {1e300, 1e300, 1e300}, hi[3] = {-1e300, -1e300, -1e300};
  for (std::uint32_t i = begin; i < end; ++i) {
    const Point3 p = pts_[ids_[i]];
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  int axis = 0;
  for (int a = 1; a < 3; ++a)
    if (hi[a] - lo[a] > hi[axis] - lo[axis]) axis = a;

  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(ids_.begin() + begin, ids_.begin() + mid, ids_.begin() + end,
                   [&](std::uint32_t a, std::uint32_t b) {
                     return pts_[a][axis] < pts_[b][axis];
                   });
  node.axis = axis;
  node.split = pts_[ids_[mid]][axis];
  const std::uint32_t self = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(node);
  const std::uint32_t l = build(begin, mid);
  const std::uint32_t r = build(mid, end);
  nodes_[self].left = l;
  nodes_[self].right = r;
  return self;
}

void KdTree::search(std::uint32_t ni, const double q[3],
                    kernels::Nearest& best) const {
  const Node& node = nodes_[ni];
  if (node.axis < 0) {
    const std::uint32_t n = node.end - node.begin;
    const auto hit = kernels::active_ops().nearest3(
        pts_.xs() + node.begin, pts_.ys() + node.begin, pts_.zs() + node.begin,
        n, q);
    if (hit.dist2 < best.dist2) {
      best.dist2 = hit.dist2;
      best.index = node.begin + hit.index;
    }
    return;
  }
  const double delta = q[node.axis] - node.split;
  const std::uint32_t near = delta < 0 ? node.left : node.right;
  const std::uint32_t far = delta < 0 ? node.right : node.left;
  search(near, q, best);
  if (delta * delta < best.dist2) search(far, q, best);
}

kernels::Nearest KdTree::nearest(const Point3& q) const {
  kernels::Nearest best{std::numeric_limits<double>::infinity(), 0};
  const double qq[3] = {q.x(), q.y(), q.z()};
  search(root_, qq, best);
  best.index = ids_[best.index];
  return best;
}

void KdTree::search_excluding(std::uint32_t ni, const double q[3],
                              std::uint32_t excluded,
                              kernels::Nearest& best) const {
  const Node& node = nodes_[ni];
  if (node.axis < 0) {
    for (std::uint32_t j = node.begin; j < node.end; ++j) {
      if (ids_[j] == excluded) continue;
      const double dx = pts_.xs()[j] - q[0];
      const double dy = pts_.ys()[j] - q[1];
      const double dz = pts_.zs()[j] - q[2];
      const double d2 = dx * dx + dy * dy + dz * dz;
      if (d2 < best.dist2) {
        best.dist2 = d2;
        best.index = j;
      }
    }
    return;
  }
  const double delta = q[node.axis] - node.split;
  const std::uint32_t near = delta < 0 ? node.left : node.right;
  const std::uint32_t far = delta < 0 ? node.right : node.left;
  search_excluding(near, q, excluded, best);
  if (delta * delta < best.dist2) search_excluding(far, q, excluded, best);
}

double KdTree::median_spacing(std::size_t sample) const {
  const std::size_t n = pts_.size();
  if (n < 2) return 0.0;
  const std::size_t count = std::min(sample, n);
  const std::size_t stride = std::max<std::size_t>(1, n / count);
  std::vector<double> dists;
  dists.reserve(count);
  for (std::size_t i = 0; i < n && dists.size() < count; i += stride) {
    const Point3 p = pts_[i];
    const double q[3] = {p.x(), p.y(), p.z()};
    kernels::Nearest best{std::numeric_limits<double>::infinity(), 0};
    search_excluding(root_, q, ids_[i], best);
    if (std::isfinite(best.dist2)) dists.push_back(std::sqrt(best.dist2));
  }
  if (dists.empty()) return 0.0;
  std::nth_element(dists.begin(), dists.begin() + dists.size() / 2, dists.end());
  return dists[dists.size() / 2];
}

}  // namespace cairn
