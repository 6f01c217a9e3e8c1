#pragma once

#include "cairn/geometry/ransac.hpp"
#include "cairn/geometry/types.hpp"

namespace cairn {

/// Oriented bounding box anchored on a fitted plane: one axis is the plane
/// normal, the in-plane orientation is the minimum-area rectangle of the
/// points projected onto the plane. Falls back to the axis-aligned box
/// (flagged) when the projection is degenerate.
OMBB3 ombb_from_plane(const Region& r, const Plane& plane);

}  // namespace cairn
