#pragma once

#include <map>
#include <set>

#include "cairn/stability/simplex.hpp"
#include "cairn/voxel/contact.hpp"

namespace cairn {

inline constexpr double kGravity = 9.81;  // m/s^2

struct RigidBody {
  int label = -1;
  double mass = 0.0;       // kg
  Point3 centroid = Point3::Zero();  // torque reference = center of mass
};

/// The static-equilibrium system A f + w = 0, f >= 0. Per contact point: one
/// column along the contact normal and four along the friction pyramid edges
/// (the tangent directions tilted into the normal so the pyramid is inscribed
/// in the Coulomb cone). Newton's third law lives in the columns: opposite
/// signs in the two bodies' row blocks. Ground has no rows.
struct EquilibriumProblem {
  Eigen::MatrixXd A;     // 6 rows per body: force balance then torque balance
  Eigen::VectorXd w;     // per body: (0, 0, -m g, 0, 0, 0)
  double mu = 0.5;

  std::vector<RigidBody> bodies;       // sorted by label
  std::map<int, int> body_index;       // label -> index into bodies
  std::vector<ContactRegion> contacts;

  struct Column {
    int contact = -1;            // index into contacts
    int point = -1;              // 0..3
    Eigen::Vector3d direction;   // force applied on contacts[contact].b
    bool is_normal = false;
  };
  std::vector<Column> columns;
};

/// Build the equilibrium system from completed objects and their contacts.
/// Mass = completed volume x density. Throws when an object has no volume.
EquilibriumProblem assemble(const VoxelScene& scene, const ContactGraph& contacts,
                            double density, double mu);

/// Core builder shared with tests: bodies plus explicit contact patches.
EquilibriumProblem assemble_from_bodies(std::vector<RigidBody> bodies,
                                        std::vector<ContactRegion> contacts,
                                        double mu);

struct StabilityResult {
  bool stable = false;
  Eigen::VectorXd forces;   // magnitudes per column when stable
  double residual = 0.0;    // inf-norm of A f + w at the certificate
  int iterations = 0;
};

/// Linear feasibility of the equilibrium system (phase-1 simplex, tolerance
/// 1e-7 on constraint residuals).
StabilityResult is_stable(const EquilibriumProblem& p);

enum class RemovalMode {
  one_sided,     // zero only the wrench the contact applies on the supported
  full_contact,  // drop the contact columns from both bodies
};

struct SupportGraph {
  std::set<int> nodes;
  std::set<std::pair<int, int>> edges;  // supporter -> supported
};

/// Directed core-supporter edges: o1 -> o2 when the system becomes infeasible
/// after removing every force the o1-o2 contacts impose on o2. Ground may
/// support but is never supported. The base problem must be feasible.
SupportGraph core_supporters(const EquilibriumProblem& p,
                             RemovalMode mode = RemovalMode::one_sided);

}  // namespace cairn
