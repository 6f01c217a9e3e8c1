#pragma once

#include "cairn/matching/relation_graph.hpp"

namespace cairn {

/// Object correspondence between two views with the variance score of the
/// normalized relation distances; lower is better, 0 means the relation
/// graphs agree exactly at some quadrant.
struct MatchResult {
  std::vector<std::pair<int, int>> pairs;  // (label in view 1, label in view 2)
  double score = 0.0;
  std::size_t candidates_evaluated = 0;
};

/// All ordered length-k selections of ids, in recursive first-position order.
std::vector<std::vector<int>> get_permutation(const std::vector<int>& ids,
                                              int length);

struct MatchOptions {
  // Above this object count, candidates are pruned to radius-compatible
  // pairings (relative radius difference below radius_tolerance).
  int exhaustive_limit = 8;
  double radius_tolerance = 0.2;
};

/// Variance-minimizing matching over candidate pairings (the larger view's
/// labels are permuted against the smaller view's in order). Ties fall back
/// to the smaller summed |tile distance|, then to lexicographic pair order.
MatchResult get_matched_objects(const RelationGraph& g1, const RelationGraph& g2,
                                const MatchOptions& opts = {});

/// Yaw about z plus translation mapping view 2 into view 1's frame.
struct InitialGuess {
  double yaw = 0.0;  // radians, [-pi, pi)
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  RigidTransform transform() const {
    return RigidTransform::about_z(yaw, translation);
  }
};

/// Grid search of the horizontal rotation minimizing the summed |tile
/// distance| between the two relation graphs (1 degree grid, golden-section
/// refinement), then translation aligning the matched centroid means.
InitialGuess estimate_initial_transform(const MatchResult& match,
                                        const LabeledPointCloud& v1,
                                        const LabeledPointCloud& v2);

}  // namespace cairn
