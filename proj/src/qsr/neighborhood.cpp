#include "cairn/qsr/neighborhood.hpp"

#include <cmath>
#include <random>

namespace cairn::qsr {

void NeighborhoodGraph::add_edge(Eia u, Eia v) {
  const int i = static_cast<int>(u), j = static_cast<int>(v);
  nodes_[i] = nodes_[j] = true;
  if (i == j) return;
  adj_[i][j] = adj_[j][i] = true;
}

bool NeighborhoodGraph::has_edge(Eia u, Eia v) const {
  return adj_[static_cast<int>(u)][static_cast<int>(v)];
}

std::vector<Eia> NeighborhoodGraph::nodes() const {
  std::vector<Eia> out;
  for (int i = 0; i < kEiaCount; ++i)
    if (nodes_[i]) out.push_back(static_cast<Eia>(i));
  return out;
}

std::vector<std::pair<Eia, Eia>> NeighborhoodGraph::edges() const {
  std::vector<std::pair<Eia, Eia>> out;
  for (int i = 0; i < kEiaCount; ++i)
    for (int j = i + 1; j < kEiaCount; ++j)
      if (adj_[i][j]) out.emplace_back(static_cast<Eia>(i), static_cast<Eia>(j));
  return out;
}

bool NeighborhoodGraph::connected() const {
  const auto ns = nodes();
  if (ns.empty()) return false;
  std::vector<Eia> stack{ns.front()};
  bool seen[kEiaCount] = {};
  seen[static_cast<int>(ns.front())] = true;
  std::size_t visited = 1;
  while (!stack.empty()) {
    const int u = static_cast<int>(stack.back());
    stack.pop_back();
    for (int v = 0; v < kEiaCount; ++v)
      if (adj_[u][v] && !seen[v]) {
        seen[v] = true;
        ++visited;
        stack.push_back(static_cast<Eia>(v));
      }
  }
  return visited == ns.size();
}

namespace {

// A rectangle pair rotating rigidly about the origin; the sweep watches the
// axis-aligned projections of both rectangles.
struct SweepPair {
  Eigen::Vector2d ca, cb;
  double ah1, ah2, bh1, bh2;  // half extents
  double aphi, bphi;          // own orientation
};

Interval projected(const Eigen::Vector2d& c, double h1, double h2, double phi,
                   double theta, int axis) {
  const double ct = std::cos(theta), st = std::sin(theta);
  const Eigen::Vector2d rc(ct * c.x() - st * c.y(), st * c.x() + ct * c.y());
  const double co = std::cos(phi + theta), si = std::sin(phi + theta);
  const double half = axis == 0 ? h1 * std::abs(co) + h2 * std::abs(si)
                                : h1 * std::abs(si) + h2 * std::abs(co);
  const double mid = axis == 0 ? rc.x() : rc.y();
  return {mid - half, mid + half};
}

Eia relation_at(const SweepPair& s, double theta, int axis) {
  return eia_of(projected(s.ca, s.ah1, s.ah2, s.aphi, theta, axis),
                projected(s.cb, s.bh1, s.bh2, s.bphi, theta, axis));
}

// Recursively bisect a transition until the intermediate (boundary) relations
// are resolved. Near a landmark crossing the epsilon window of the classifier
// is a few 1e-9 rad wide, so the recursion bottoms out well before the width
// guard.
void refine(const SweepPair& s, int axis, double t0, double t1, Eia r0, Eia r1,
            int depth, NeighborhoodGraph& g) {
  if (r0 == r1) return;
  if (depth > 48 || t1 - t0 < 1e-13) {
    g.add_edge(r0, r1);
    return;
  }
  const double tm = 0.5 * (t0 + t1);
  const Eia rm = relation_at(s, tm, axis);
  refine(s, axis, t0, tm, r0, rm, depth + 1, g);
  refine(s, axis, tm, t1, rm, r1, depth + 1, g);
}

void sweep(const SweepPair& s, double step_rad, NeighborhoodGraph& g) {
  for (int axis = 0; axis < 2; ++axis) {
    double t_prev = 0.0;
    Eia r_prev = relation_at(s, t_prev, axis);
    g.add_edge(r_prev, r_prev);  // record the node
    const int steps = static_cast<int>(std::ceil(2.0 * M_PI / step_rad));
    for (int i = 1; i <= steps; ++i) {
      const double t = std::min(2.0 * M_PI, i * step_rad);
      const Eia r = relation_at(s, t, axis);
      if (r != r_prev) refine(s, axis, t_prev, t, r_prev, r, 0, g);
      t_prev = t;
      r_prev = r;
    }
  }
}

NeighborhoodGraph build(double step_deg) {
  NeighborhoodGraph g;
  const double step = step_deg * M_PI / 180.0;
  std::mt19937_64 rng(0xCA1Bull);
  std::uniform_real_distribution<double> pos(-1.0, 1.0);
  std::uniform_real_distribution<double> dim(0.08, 0.6);
  std::uniform_real_distribution<double> ang(0.0, M_PI);

  for (int i = 0; i < 48; ++i) {
    SweepPair s{{pos(rng), pos(rng)}, {pos(rng), pos(rng)}, dim(rng), dim(rng),
                dim(rng),            dim(rng),              ang(rng), ang(rng)};
    sweep(s, step, g);
  }
  // concentric pairs reach the center-coincident relations (cd, eq, cdi)
  for (int i = 0; i < 8; ++i) {
    const Eigen::Vector2d c(pos(rng), pos(rng));
    const double d1 = dim(rng), d2 = dim(rng);
    SweepPair s{c, c, d1, d2, dim(rng), dim(rng), ang(rng), ang(rng)};
    sweep(s, step, g);
  }
  for (int i = 0; i < 6; ++i) {  // congruent concentric: width crossings hit eq
    const Eigen::Vector2d c(pos(rng), pos(rng));
    const double d1 = dim(rng), d2 = dim(rng);
    SweepPair s{c, c, d1, d2, d1, d2, ang(rng), ang(rng)};
    sweep(s, step, g);
  }
  return g;
}

}  // namespace

const NeighborhoodGraph& eia_neighborhood() {
  static const NeighborhoodGraph g = build(0.1);
  return g;
}

}  // namespace cairn::qsr
