#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cairn/qsr/interval.hpp"

namespace cairn::qsr {

// Interval relations refined by the interval midpoints. Endpoint-endpoint and
// center-center comparisons are three-valued (equality is a relation of its
// own: m, s-, f-, eq, cd families); endpoint-center comparisons are
// two-valued with the boundary assigned to the >= side, which keeps the basic
// relation count at exactly 27.
//
// Identifier scheme, with X* the converse of X:
//   b/bi      disjoint, a before/after b
//   m/mi      a meets / is met by b
//   lol..mom  a overlaps b from below; first letter: has a's center entered b
//             (l = no, m = yes); last letter: has a's upper end passed b's
//             center (l = no, m = yes); loli..momi the converses
//   ls/ms     a starts b, reaching less/more than b's center; lsi/msi conv.
//   lf/mf     a finishes b, covering less/more than half of b; lfi/mfi conv.
//   hd/hdr    a strictly inside b, center left/right of b's center
//   cd        a strictly inside b with coincident centers (cdi conv.)
//   eq        identical intervals
enum class Eia : std::uint8_t {
  b, m, lol, mol, lom, mom, ls, ms, lf, mf, hd, cd, hdr, eq,
  bi, mi, loli, moli, lomi, momi, lsi, msi, lfi, mfi, hdi, cdi, hdri,
};

inline constexpr int kEiaCount = 27;
inline constexpr double kEiaDefaultEps = 1e-9;

/// Signs of the nine landmark comparisons (a.lo, a.center, a.hi) against
/// (b.lo, b.center, b.hi), row-major; -1 / 0 / +1.
using EiaSignature = std::array<std::int8_t, 9>;

/// Classify the relation of a against b. eps is relative to the larger
/// interval length. Throws on degenerate intervals.
Eia eia_of(const Interval& a, const Interval& b, double eps = kEiaDefaultEps);

/// Relation seen from b's side.
Eia eia_converse(Eia r);

/// Mirror relation: the relation obtained by negating the axis of both
/// intervals. Fixed points are exactly cd, eq, cdi.
Eia eia_symm(Eia r);

std::string_view eia_name(Eia r);
std::optional<Eia> eia_from_name(std::string_view name);

/// Canonical signature of the relation, taken from a realizing interval pair.
EiaSignature eia_signature(Eia r);

/// A concrete interval pair realizing the relation.
struct EiaRepresentative {
  Interval a, b;
};
EiaRepresentative eia_representative(Eia r);

/// Brute-force enumeration over qualitative placements of two
/// midpoint-centered intervals; yields all 27 basic relations.
const std::vector<Eia>& enumerate_basic_relations();

}  // namespace cairn::qsr
