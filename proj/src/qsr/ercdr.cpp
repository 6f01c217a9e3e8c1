#include "cairn/qsr/ercdr.hpp"

#include <cmath>

#include "cairn/error.hpp"

namespace cairn::qsr {

std::string ErcdrTile::name() const {
  return "x" + std::to_string(x_lo) + "-" + std::to_string(x_hi) + "/y" +
         std::to_string(y_lo) + "-" + std::to_string(y_hi);
}

const std::vector<ErcdrTile>& all_ercdr_tiles() {
  static const std::vector<ErcdrTile> tiles = [] {
    std::vector<ErcdrTile> out;
    for (std::uint8_t xl = 1; xl <= 4; ++xl)
      for (std::uint8_t xh = xl; xh <= 4; ++xh)
        for (std::uint8_t yl = 1; yl <= 4; ++yl)
          for (std::uint8_t yh = yl; yh <= 4; ++yh)
            out.push_back({xl, xh, yl, yh});
    return out;
  }();
  return tiles;
}

namespace {

// zone of a point, boundary belongs to the zone above: [line, next)
std::uint8_t zone_lo(double v, const double l[3], double eps) {
  if (v < l[0] - eps) return 1;
  if (v < l[1] - eps) return 2;
  if (v < l[2] - eps) return 3;
  return 4;
}

// zone just below the interval's upper end: (prev, line]
std::uint8_t zone_hi(double v, const double l[3], double eps) {
  if (v <= l[0] + eps) return 1;
  if (v <= l[1] + eps) return 2;
  if (v <= l[2] + eps) return 3;
  return 4;
}

std::pair<std::uint8_t, std::uint8_t> span_of(double lo, double hi,
                                              const double l[3], double eps) {
  std::uint8_t a = zone_lo(lo, l, eps);
  std::uint8_t b = zone_hi(hi, l, eps);
  if (b < a) b = a;  // knife-edge interval exactly on a landmark line
  return {a, b};
}

}  // namespace

ErcdrTile ercdr_of(const MBR2& a, const MBR2& b, double eps) {
  if (!(b.x_lo < b.x_hi) || !(b.y_lo < b.y_hi))
    throw Error("ercdr_of: degenerate reference rectangle");
  const double scale =
      std::max({b.width(), b.height(), a.width(), a.height()});
  const double e = eps * scale;
  const double lx[3] = {b.x_lo, b.x_center(), b.x_hi};
  const double ly[3] = {b.y_lo, b.y_center(), b.y_hi};
  const auto [xl, xh] = span_of(a.x_lo, a.x_hi, lx, e);
  const auto [yl, yh] = span_of(a.y_lo, a.y_hi, ly, e);
  return {xl, xh, yl, yh};
}

ErcdrTile rotate_tile_cw(const ErcdrTile& t) {
  // grid: x' = (4 - gy_hi, 4 - gy_lo), y' = x; in zones: x' = (5-y_hi, 5-y_lo)
  return {static_cast<std::uint8_t>(5 - t.y_hi),
          static_cast<std::uint8_t>(5 - t.y_lo), t.x_lo, t.x_hi};
}

DirectionalProperty tile_direction(const ErcdrTile& t) {
  const auto majority = [](std::uint8_t lo, std::uint8_t hi) {
    int low_side = 0, high_side = 0;
    for (int z = lo; z <= hi; ++z) (z <= 2 ? low_side : high_side)++;
    return high_side > low_side ? 1 : (low_side > high_side ? -1 : 0);
  };
  const int mx = majority(t.x_lo, t.x_hi);
  const int my = majority(t.y_lo, t.y_hi);
  DirectionalProperty dp;
  dp.h = mx > 0 ? Hdp::E : (mx < 0 ? Hdp::W : Hdp::M);
  dp.v = my > 0 ? Vdp::N : (my < 0 ? Vdp::S : Vdp::M);
  return dp;
}

Trend change_trend(const DirectionalProperty& dp, Rotation dir) {
  Trend t = Trend::none;
  if (dp.h == Hdp::E && dp.v != Vdp::N)
    t = Trend::south_to_north;
  else if (dp.v == Vdp::N && dp.h != Hdp::W)
    t = Trend::east_to_west;
  else if (dp.h == Hdp::W && dp.v != Vdp::S)
    t = Trend::north_to_south;
  else if (dp.v == Vdp::S && dp.h != Hdp::E)
    t = Trend::west_to_east;
  if (dir == Rotation::ccw) {
    switch (t) {
      case Trend::south_to_north: t = Trend::north_to_south; break;
      case Trend::north_to_south: t = Trend::south_to_north; break;
      case Trend::east_to_west: t = Trend::west_to_east; break;
      case Trend::west_to_east: t = Trend::east_to_west; break;
      case Trend::none: break;
    }
  }
  return t;
}

double tile_distance(const ErcdrTile& t1, const ErcdrTile& t2, Rotation dir) {
  const int dx = (t2.gx_hi() - t1.gx_hi()) + (t2.gx_lo() - t1.gx_lo());
  const int dy = (t2.gy_hi() - t1.gy_hi()) + (t2.gy_lo() - t1.gy_lo());
  const int mag = std::abs(dx) + std::abs(dy);
  if (mag == 0) return 0.0;
  // displacement projected on the trend direction; no or orthogonal-only
  // movement keeps the positive sign
  int proj = 0;
  switch (change_trend(tile_direction(t1), dir)) {
    case Trend::south_to_north: proj = dy; break;
    case Trend::north_to_south: proj = -dy; break;
    case Trend::west_to_east: proj = dx; break;
    case Trend::east_to_west: proj = -dx; break;
    case Trend::none: proj = 0; break;
  }
  return proj < 0 ? -static_cast<double>(mag) : static_cast<double>(mag);
}

double quarter_distance(const ErcdrTile& t) {
  return std::abs(tile_distance(t, rotate_tile_cw(t)));
}

int base_distance(const ErcdrTile& t1, const ErcdrTile& t2) {
  ErcdrTile ref = t1;
  int best = 0;
  double best_d = std::abs(tile_distance(ref, t2));
  for (int k = 1; k < 4; ++k) {
    ref = rotate_tile_cw(ref);
    const double d = std::abs(tile_distance(ref, t2));
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

double normalized_distance(const ErcdrTile& t1, const ErcdrTile& t2) {
  const int base = base_distance(t1, t2);
  ErcdrTile ref = t1;
  for (int k = 0; k < base; ++k) ref = rotate_tile_cw(ref);
  return base + (tile_distance(ref, t2) + 1.0) / (quarter_distance(t1) + 1.0);
}

}  // namespace cairn::qsr
