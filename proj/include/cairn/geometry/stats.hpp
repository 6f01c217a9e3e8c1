#pragma once

#include "cairn/geometry/types.hpp"

namespace cairn {

/// Arithmetic mean of the region's points. Throws on an empty region.
Point3 region_centroid(const Region& r);

/// Max Euclidean distance from the centroid to any point. Throws on empty.
double region_radius(const Region& r);

/// Axis-aligned bounding rectangle of the points' ground-plane projections.
MBR2 project_mbr(const Region& r);

}  // namespace cairn
