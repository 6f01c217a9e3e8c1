#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cairn/qsr/era.hpp"

namespace cairn::qsr {

// The reference rectangle's lo/center/hi lines cut each axis into four zones
// (numbered 1..4 from low to high); a directional relation is the contiguous
// zone span the other rectangle occupies per axis. Grid coordinates of the
// zone boundary lines run 0..4 with the bottom-left corner of the grid at
// (0, 0). Ten contiguous spans per axis give exactly 100 valid tiles.
struct ErcdrTile {
  std::uint8_t x_lo = 1, x_hi = 1;  // zones, 1 <= lo <= hi <= 4
  std::uint8_t y_lo = 1, y_hi = 1;

  int gx_lo() const { return x_lo - 1; }  // grid coordinates of bounding lines
  int gx_hi() const { return x_hi; }
  int gy_lo() const { return y_lo - 1; }
  int gy_hi() const { return y_hi; }

  bool operator==(const ErcdrTile&) const = default;
  auto operator<=>(const ErcdrTile&) const = default;

  std::string name() const;  // zone spans, e.g. "x2-3/y2-3"
};

/// All 100 valid tiles, lexicographic.
const std::vector<ErcdrTile>& all_ercdr_tiles();

/// Directional relation of a against reference b; endpoints exactly on a
/// landmark line follow the half-open [line, next-zone) convention. Throws
/// when b is degenerate.
ErcdrTile ercdr_of(const MBR2& a, const MBR2& b, double eps = kEiaDefaultEps);

/// Tile after a clockwise quarter-turn view change (grid reflection):
/// x' = (4 - y_hi, 4 - y_lo) in grid coordinates, y' = x.
ErcdrTile rotate_tile_cw(const ErcdrTile& t);

enum class Hdp : std::uint8_t { E, M, W };
enum class Vdp : std::uint8_t { N, M, S };

struct DirectionalProperty {
  Hdp h;
  Vdp v;
  bool operator==(const DirectionalProperty&) const = default;
};

/// Majority vote of the constituent single-tile directional properties.
DirectionalProperty tile_direction(const ErcdrTile& t);

enum class Trend : std::uint8_t {
  south_to_north,
  east_to_west,
  north_to_south,
  west_to_east,
  none,
};

/// Expected drift of the relation under a quarter-turn of the viewpoint
/// (table lookup; anticlockwise reverses the trend).
Trend change_trend(const DirectionalProperty& dp, Rotation dir = Rotation::cw);

/// Signed tile distance: boundary-line lift count, the sign taken from the
/// agreement of the displacement with the change trend of t1. Zero iff the
/// lift count is zero.
double tile_distance(const ErcdrTile& t1, const ErcdrTile& t2,
                     Rotation dir = Rotation::cw);

/// Distance between a tile and its quarter-turn image; normalizes distances
/// across inner and outer tiles.
double quarter_distance(const ErcdrTile& t);

/// Quadrant of t1's reference tile closest to t2 (0..3, ties to the smaller).
int base_distance(const ErcdrTile& t1, const ErcdrTile& t2);

/// Base distance plus the residual tile distance scaled by the quarter
/// distance of t1.
double normalized_distance(const ErcdrTile& t1, const ErcdrTile& t2);

}  // namespace cairn::qsr
