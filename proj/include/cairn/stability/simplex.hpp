#pragma once

#include <Eigen/Core>

namespace cairn {

struct Phase1Result {
  bool feasible = false;
  Eigen::VectorXd x;        // a feasible point when feasible
  double objective = 0.0;   // residual artificial mass at termination
  int iterations = 0;
};

/// Phase-1 simplex feasibility test for { x >= 0 : A x = b }. Bland's rule,
/// so it terminates on degenerate systems. Feasible iff the artificial
/// objective vanishes within tol. Throws on the iteration cap (signals an
/// ill-conditioned system).
Phase1Result phase1_feasible(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                             double tol = 1e-9);

}  // namespace cairn
