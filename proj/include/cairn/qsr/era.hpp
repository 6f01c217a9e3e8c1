#pragma once

#include "cairn/geometry/types.hpp"
#include "cairn/qsr/eia.hpp"

namespace cairn::qsr {

enum class Rotation { cw, ccw };

/// Rectangle relation: one interval relation per ground-plane axis.
struct Era {
  Eia x;
  Eia y;

  bool operator==(const Era&) const = default;
};

inline Era era_of(const MBR2& a, const MBR2& b, double eps = kEiaDefaultEps) {
  return {eia_of(x_interval(a), x_interval(b), eps),
          eia_of(y_interval(a), y_interval(b), eps)};
}

/// Relation after a quarter-turn view change. Clockwise: (symm(y), x);
/// anticlockwise: (y, symm(x)).
inline Era rotate_era_quarter(const Era& r, Rotation dir) {
  if (dir == Rotation::cw) return {eia_symm(r.y), r.x};
  return {r.y, eia_symm(r.x)};
}

}  // namespace cairn::qsr
