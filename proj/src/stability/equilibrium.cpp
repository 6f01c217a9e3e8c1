#include "cairn/stability/equilibrium.hpp"

#include <algorithm>
#include <cmath>

namespace cairn {

namespace {

void tangent_basis(const Eigen::Vector3d& n, Eigen::Vector3d& t1,
                   Eigen::Vector3d& t2) {
  const Eigen::Vector3d seed =
      std::abs(n.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  t1 = n.cross(seed).normalized();
  t2 = n.cross(t1);
}

}  // namespace

EquilibriumProblem assemble_from_bodies(std::vector<RigidBody> bodies,
                                        std::vector<ContactRegion> contacts,
                                        double mu) {
  EquilibriumProblem p;
  p.mu = mu;
  std::sort(bodies.begin(), bodies.end(),
            [](const RigidBody& a, const RigidBody& b) { return a.label < b.label; });
  p.bodies = std::move(bodies);
  p.contacts = std::move(contacts);
  for (std::size_t i = 0; i < p.bodies.size(); ++i)
    p.body_index[p.bodies[i].label] = static_cast<int>(i);

  const int rows = 6 * static_cast<int>(p.bodies.size());

  // column directions first, then the matrix
  const bool friction = mu > 1e-12;
  for (int c = 0; c < static_cast<int>(p.contacts.size()); ++c) {
    const ContactRegion& region = p.contacts[c];
    const Eigen::Vector3d n = region.normal.normalized();
    Eigen::Vector3d t1, t2;
    tangent_basis(n, t1, t2);
    for (int k = 0; k < 4; ++k) {
      p.columns.push_back({c, k, n, true});
      if (friction) {
        for (const Eigen::Vector3d& u : {t1, -t1, t2, -t2})
          p.columns.push_back({c, k, (n + mu * u).normalized(), false});
      }
    }
  }

  p.A = Eigen::MatrixXd::Zero(rows, static_cast<int>(p.columns.size()));
  p.w = Eigen::VectorXd::Zero(rows);
  for (std::size_t i = 0; i < p.bodies.size(); ++i) {
    if (p.bodies[i].mass <= 0)
      throw Error("assemble: body " + std::to_string(p.bodies[i].label) +
                  " has no volume");
    p.w[6 * i + 2] = -p.bodies[i].mass * kGravity;
  }

  for (int j = 0; j < static_cast<int>(p.columns.size()); ++j) {
    const auto& col = p.columns[j];
    const ContactRegion& region = p.contacts[col.contact];
    const Point3 pt = region.points[col.point];
    const Eigen::Vector3d f = col.direction;
    if (const auto it = p.body_index.find(region.b); it != p.body_index.end()) {
      const int r = 6 * it->second;
      p.A.block<3, 1>(r, j) += f;
      p.A.block<3, 1>(r + 3, j) += (pt - p.bodies[it->second].centroid).cross(f);
    }
    if (const auto it = p.body_index.find(region.a); it != p.body_index.end()) {
      const int r = 6 * it->second;
      p.A.block<3, 1>(r, j) -= f;
      p.A.block<3, 1>(r + 3, j) -= (pt - p.bodies[it->second].centroid).cross(f);
    }
  }
  return p;
}

EquilibriumProblem assemble(const VoxelScene& scene, const ContactGraph& contacts,
                            double density, double mu) {
  std::vector<RigidBody> bodies;
  for (int label : scene.labels()) {
    RigidBody body;
    body.label = label;
    body.mass = scene.object_volume(label) * density;
    body.centroid = scene.object_centroid(label);
    bodies.push_back(body);
  }
  return assemble_from_bodies(std::move(bodies),
                              contact_regions(scene, contacts), mu);
}

StabilityResult is_stable(const EquilibriumProblem& p) {
  StabilityResult out;
  if (p.w.size() == 0) {
    out.stable = true;
    return out;
  }
  // homogeneous in the force scale: normalize to keep the tableau O(1)
  const double scale = std::max(1.0, p.w.cwiseAbs().maxCoeff());
  const Eigen::VectorXd b = -p.w / scale;
  const auto result = phase1_feasible(p.A, b, 1e-9);
  out.iterations = result.iterations;
  out.stable = result.feasible;
  if (result.feasible) {
    out.forces = result.x * scale;
    out.residual = (p.A * out.forces + p.w).cwiseAbs().maxCoeff();
    const double tol = 1e-7 * (1.0 + p.w.cwiseAbs().maxCoeff());
    if (out.residual > tol) out.stable = false;
  }
  return out;
}

SupportGraph core_supporters(const EquilibriumProblem& p, RemovalMode mode) {
  if (!is_stable(p).stable)
    throw Error("core_supporters: base system must be feasible");

  SupportGraph g;
  for (const auto& body : p.bodies) g.nodes.insert(body.label);

  // contacting pairs, both directions; ground is never supported
  std::set<std::pair<int, int>> directed;
  for (const auto& region : p.contacts) {
    if (p.body_index.count(region.b)) directed.insert({region.a, region.b});
    if (p.body_index.count(region.a)) directed.insert({region.b, region.a});
  }
  if (std::any_of(p.contacts.begin(), p.contacts.end(), [](const auto& r) {
        return r.a == kGroundLabel || r.b == kGroundLabel;
      }))
    g.nodes.insert(kGroundLabel);

  for (const auto& [o1, o2] : directed) {
    EquilibriumProblem mod = p;
    const int row = 6 * mod.body_index.at(o2);
    for (int j = 0; j < static_cast<int>(mod.columns.size()); ++j) {
      const ContactRegion& region = mod.contacts[mod.columns[j].contact];
      const bool between = (region.a == o1 && region.b == o2) ||
                           (region.a == o2 && region.b == o1);
      if (!between) continue;
      if (mode == RemovalMode::full_contact)
        mod.A.col(j).setZero();
      else
        mod.A.block<6, 1>(row, j).setZero();
    }
    if (!is_stable(mod).stable) g.edges.insert({o1, o2});
  }
  return g;
}

}  // namespace cairn
