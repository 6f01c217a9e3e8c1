#include "cairn/matching/match.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cairn/geometry/min_rect.hpp"
#include "cairn/geometry/stats.hpp"

namespace cairn {

RelationGraph build_relation_graph(const LabeledPointCloud& view) {
  if (view.regions.size() < 2)
    throw Error("build_relation_graph: need at least 2 regions");
  RelationGraph g;
  g.view_id = view.view_id;
  std::map<int, MBR2> mbrs;
  for (const auto& r : view.regions) {
    g.labels.push_back(r.label);
    mbrs[r.label] = project_mbr(r);
    g.radii[r.label] = region_radius(r);
    g.centroids[r.label] = region_centroid(r);
  }
  std::sort(g.labels.begin(), g.labels.end());
  for (int i : g.labels)
    for (int j : g.labels) {
      if (i == j) continue;
      g.relations[{i, j}] = qsr::ercdr_of(mbrs[i], mbrs[j]);
    }
  return g;
}

namespace {

void permute_rec(const std::vector<int>& ids, std::vector<int>& prefix,
                 int length, std::vector<std::vector<int>>& out) {
  if (length == 0) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    prefix.push_back(ids[i]);
    std::vector<int> remain = ids;
    remain.erase(remain.begin() + static_cast<std::ptrdiff_t>(i));
    permute_rec(remain, prefix, length - 1, out);
    prefix.pop_back();
  }
}

// Permutations of the larger list pruned to radius-compatible assignments;
// slot j of the selection is paired with small_ids[j].
void permute_pruned(const std::vector<int>& ids, std::vector<int>& prefix,
                    const std::vector<int>& small_ids,
                    const std::map<int, double>& radii_large,
                    const std::map<int, double>& radii_small, double tol,
                    std::vector<std::vector<int>>& out) {
  const std::size_t slot = prefix.size();
  if (slot == small_ids.size()) {
    out.push_back(prefix);
    return;
  }
  const double rs = radii_small.at(small_ids[slot]);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const double rl = radii_large.at(ids[i]);
    const double rel = std::abs(rl - rs) / std::max({rl, rs, 1e-12});
    if (rel >= tol) continue;
    if (std::find(prefix.begin(), prefix.end(), ids[i]) != prefix.end())
      continue;
    prefix.push_back(ids[i]);
    permute_pruned(ids, prefix, small_ids, radii_large, radii_small, tol, out);
    prefix.pop_back();
  }
}

double variance(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0, s2 = 0.0;
  for (double x : xs) {
    s += x;
    s2 += x * x;
  }
  const double mean = s / xs.size();
  return std::max(0.0, s2 / xs.size() - mean * mean);
}

}  // namespace

std::vector<std::vector<int>> get_permutation(const std::vector<int>& ids,
                                              int length) {
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  permute_rec(ids, prefix, length, out);
  return out;
}

MatchResult get_matched_objects(const RelationGraph& g1, const RelationGraph& g2,
                                const MatchOptions& opts) {
  if (g1.labels.size() < 2 || g2.labels.size() < 2)
    throw Error("get_matched_objects: both views need at least 2 objects");

  const bool first_larger = g1.labels.size() >= g2.labels.size();
  const RelationGraph& big = first_larger ? g1 : g2;
  const RelationGraph& small = first_larger ? g2 : g1;

  std::vector<std::vector<int>> selections;
  if (static_cast<int>(big.labels.size()) > opts.exhaustive_limit) {
    std::vector<int> prefix;
    permute_pruned(big.labels, prefix, small.labels, big.radii, small.radii,
                   opts.radius_tolerance, selections);
  }
  if (selections.empty())
    selections = get_permutation(big.labels, static_cast<int>(small.labels.size()));

  MatchResult best;
  double best_score = std::numeric_limits<double>::infinity();
  double best_tie = std::numeric_limits<double>::infinity();
  std::vector<std::pair<int, int>> best_pairs;

  for (const auto& sel : selections) {
    std::vector<std::pair<int, int>> pairs(sel.size());
    for (std::size_t j = 0; j < sel.size(); ++j)
      pairs[j] = first_larger ? std::make_pair(sel[j], small.labels[j])
                              : std::make_pair(small.labels[j], sel[j]);

    std::vector<double> dists;
    double tie = 0.0;
    dists.reserve(pairs.size() * (pairs.size() - 1));
    for (std::size_t m = 0; m < pairs.size(); ++m)
      for (std::size_t n = 0; n < pairs.size(); ++n) {
        if (m == n) continue;
        const auto& r1 = g1.at(pairs[m].first, pairs[n].first);
        const auto& r2 = g2.at(pairs[m].second, pairs[n].second);
        dists.push_back(qsr::normalized_distance(r1, r2));
        tie += std::abs(qsr::tile_distance(r1, r2));
      }
    const double score = variance(dists);
    ++best.candidates_evaluated;

    bool take = false;
    if (score < best_score - 1e-12) {
      take = true;
    } else if (score <= best_score + 1e-12) {
      if (tie < best_tie - 1e-12)
        take = true;
      else if (tie <= best_tie + 1e-12 && !best_pairs.empty() && pairs < best_pairs)
        take = true;
    }
    if (take) {
      best_score = score;
      best_tie = tie;
      best_pairs = pairs;
    }
  }

  best.pairs = best_pairs;
  std::sort(best.pairs.begin(), best.pairs.end());
  best.score = best_score;
  return best;
}

namespace {

struct RotatableRegion {
  std::vector<Eigen::Vector2d> hull;  // xy hull; bounds after rotation = mbr
};

MBR2 rotated_mbr(const RotatableRegion& r, double c, double s) {
  MBR2 m{std::numeric_limits<double>::infinity(),
         -std::numeric_limits<double>::infinity(),
         std::numeric_limits<double>::infinity(),
         -std::numeric_limits<double>::infinity()};
  for (const auto& p : r.hull) {
    const double x = c * p.x() - s * p.y();
    const double y = s * p.x() + c * p.y();
    m.x_lo = std::min(m.x_lo, x);
    m.x_hi = std::max(m.x_hi, x);
    m.y_lo = std::min(m.y_lo, y);
    m.y_hi = std::max(m.y_hi, y);
  }
  return m;
}

}  // namespace

InitialGuess estimate_initial_transform(const MatchResult& match,
                                        const LabeledPointCloud& v1,
                                        const LabeledPointCloud& v2) {
  if (match.pairs.empty())
    throw Error("estimate_initial_transform: empty match");

  const std::size_t k = match.pairs.size();
  std::vector<MBR2> mbr1(k);
  std::vector<RotatableRegion> rot2(k);
  std::vector<Point3> c1(k), c2(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Region* r1 = v1.find(match.pairs[i].first);
    const Region* r2 = v2.find(match.pairs[i].second);
    if (!r1 || !r2) throw Error("estimate_initial_transform: label not in view");
    mbr1[i] = project_mbr(*r1);
    c1[i] = region_centroid(*r1);
    c2[i] = region_centroid(*r2);
    std::vector<Eigen::Vector2d> xy;
    xy.reserve(r2->points.size());
    for (std::size_t p = 0; p < r2->points.size(); ++p)
      xy.emplace_back(r2->points.xs()[p], r2->points.ys()[p]);
    rot2[i].hull = convex_hull(std::move(xy));
  }

  std::vector<qsr::ErcdrTile> tiles1;
  tiles1.reserve(k * (k - 1));
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t n = 0; n < k; ++n)
      if (m != n) tiles1.push_back(qsr::ercdr_of(mbr1[m], mbr1[n]));

  Point3 mean1 = Point3::Zero(), mean2 = Point3::Zero();
  for (std::size_t i = 0; i < k; ++i) {
    mean1 += c1[i];
    mean2 += c2[i];
  }
  mean1 /= static_cast<double>(k);
  mean2 /= static_cast<double>(k);
  double norm1 = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    norm1 += (c1[i] - mean1).head<2>().squaredNorm();
  norm1 = std::max(norm1, 1e-12);

  // Summed |tile distance| is integer-valued; the centroid alignment residual
  // (scaled below 1/2) only breaks plateau ties, it can never override it.
  const auto objective = [&](double yaw) {
    const double c = std::cos(yaw), s = std::sin(yaw);
    std::vector<MBR2> m2(k);
    for (std::size_t i = 0; i < k; ++i) m2[i] = rotated_mbr(rot2[i], c, s);
    double tile_sum = 0.0;
    std::size_t idx = 0;
    for (std::size_t m = 0; m < k; ++m)
      for (std::size_t n = 0; n < k; ++n) {
        if (m == n) continue;
        tile_sum +=
            std::abs(qsr::tile_distance(tiles1[idx++], qsr::ercdr_of(m2[m], m2[n])));
      }
    double resid = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const Eigen::Vector2d d2 = (c2[i] - mean2).head<2>();
      const Eigen::Vector2d d1 = (c1[i] - mean1).head<2>();
      const Eigen::Vector2d rd(c * d2.x() - s * d2.y(), s * d2.x() + c * d2.y());
      resid += (rd - d1).squaredNorm();
    }
    return tile_sum + 0.1 * std::min(resid / norm1, 1.0);
  };

  const double deg = M_PI / 180.0;
  double best_yaw = 0.0;
  double best_f = std::numeric_limits<double>::infinity();
  for (int d = -180; d < 180; ++d) {
    const double f = objective(d * deg);
    if (f < best_f) {
      best_f = f;
      best_yaw = d * deg;
    }
  }

  // golden-section refinement inside the winning grid cell
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = best_yaw - deg, b = best_yaw + deg;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = objective(x1), f2 = objective(x2);
  while (b - a > 0.1 * deg) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = objective(x2);
    }
  }

  InitialGuess guess;
  guess.yaw = std::remainder(0.5 * (a + b), 2.0 * M_PI);
  if (guess.yaw >= M_PI) guess.yaw -= 2.0 * M_PI;
  const Eigen::Matrix3d r =
      Eigen::AngleAxisd(guess.yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  guess.translation = mean1 - r * mean2;
  return guess;
}

}  // namespace cairn
