#pragma once

#include "cairn/geometry/types.hpp"

namespace cairn::qsr {

/// Closed interval with its midpoint as a third landmark.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double center() const { return 0.5 * (lo + hi); }
  double length() const { return hi - lo; }
  bool degenerate() const { return !(lo < hi); }
};

inline Interval x_interval(const MBR2& m) { return {m.x_lo, m.x_hi}; }
inline Interval y_interval(const MBR2& m) { return {m.y_lo, m.y_hi}; }

}  // namespace cairn::qsr
