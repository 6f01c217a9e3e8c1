#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cairn/geometry/types.hpp"
#include "cairn/qsr/ercdr.hpp"

namespace cairn {

/// Directional relations between every ordered pair of objects in one view,
/// plus per-object size statistics used for candidate pruning.
struct RelationGraph {
  std::string view_id;
  std::vector<int> labels;  // sorted
  std::map<std::pair<int, int>, qsr::ErcdrTile> relations;
  std::map<int, double> radii;
  std::map<int, Point3> centroids;

  const qsr::ErcdrTile& at(int i, int j) const {
    return relations.at({i, j});
  }
};

/// Tiles for all ordered pairs of regions. Throws with fewer than 2 regions.
RelationGraph build_relation_graph(const LabeledPointCloud& view);

}  // namespace cairn
