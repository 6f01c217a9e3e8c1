#pragma once

#include <set>
#include <utility>
#include <vector>

#include "cairn/qsr/eia.hpp"

namespace cairn::qsr {

/// Conceptual neighborhood of the 27 interval relations under continuous
/// horizontal view rotation: an edge joins two relations observed as a
/// one-step transition.
class NeighborhoodGraph {
 public:
  void add_edge(Eia u, Eia v);

  bool has_edge(Eia u, Eia v) const;
  bool has_node(Eia u) const { return nodes_[static_cast<int>(u)]; }

  std::vector<Eia> nodes() const;
  /// Unordered pairs, each reported once with the smaller enum first.
  std::vector<std::pair<Eia, Eia>> edges() const;

  bool connected() const;

 private:
  bool adj_[kEiaCount][kEiaCount] = {};
  bool nodes_[kEiaCount] = {};
};

/// The neighborhood graph generated empirically by rotating a deterministic
/// sample of rectangle pairs in small angular steps and refining every
/// observed transition down to the crossing configuration. Built once,
/// shared read-only.
const NeighborhoodGraph& eia_neighborhood();

}  // namespace cairn::qsr
