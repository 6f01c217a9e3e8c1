#include "cairn/stability/simplex.hpp"

#include <cmath>
#include <vector>

#include "cairn/error.hpp"

namespace cairn {

Phase1Result phase1_feasible(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                             double tol) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());

  // tableau: [A | I | b] with b >= 0; artificial basis
  Eigen::MatrixXd t(m, n + m + 1);
  t.leftCols(n) = A;
  t.middleCols(n, m) = Eigen::MatrixXd::Identity(m, m);
  t.col(n + m) = b;
  for (int i = 0; i < m; ++i)
    if (t(i, n + m) < 0) t.row(i) = -t.row(i);

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  const double pivot_eps = 1e-11;
  const int max_iterations = 200 * (m + n) + 2000;

  Phase1Result out;
  for (out.iterations = 0; out.iterations < max_iterations; ++out.iterations) {
    // reduced costs of minimize sum(artificials): c_j - sum over artificial
    // basis rows of the column
    int entering = -1;
    for (int j = 0; j < n + m && entering < 0; ++j) {
      double rc = j >= n ? 1.0 : 0.0;
      for (int i = 0; i < m; ++i)
        if (basis[i] >= n) rc -= t(i, j);
      if (rc < -tol) entering = j;  // Bland: first improving index
    }
    if (entering < 0) break;

    int leaving = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      if (t(i, entering) <= pivot_eps) continue;
      const double ratio = t(i, n + m) / t(i, entering);
      if (leaving < 0 || ratio < best_ratio - 1e-15 ||
          (std::abs(ratio - best_ratio) <= 1e-15 && basis[i] < basis[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) break;  // unbounded improving direction cannot happen here

    t.row(leaving) /= t(leaving, entering);
    for (int i = 0; i < m; ++i) {
      if (i == leaving) continue;
      const double f = t(i, entering);
      if (f != 0.0) t.row(i) -= f * t.row(leaving);
    }
    basis[leaving] = entering;
  }
  if (out.iterations >= max_iterations)
    throw Error("phase1_feasible: iteration limit reached (m=" +
                std::to_string(m) + ", n=" + std::to_string(n) + ")");

  double artificial_mass = 0.0;
  out.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    const double v = t(i, n + m);
    if (basis[i] >= n)
      artificial_mass += std::abs(v);
    else
      out.x[basis[i]] = v;
  }
  out.objective = artificial_mass;
  out.feasible = artificial_mass <= tol * (1.0 + b.cwiseAbs().maxCoeff());
  return out;
}

}  // namespace cairn
