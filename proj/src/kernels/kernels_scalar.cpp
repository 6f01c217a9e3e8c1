#include <cmath>
#include <limits>

#include "cairn/kernels/kernels.hpp"

namespace cairn::kernels {
namespace {

void sum3_scalar(const double* xs, const double* ys, const double* zs,
                 std::size_t n, double out[3]) {
  double sx = 0.0, sy = 0.0, sz = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sz += zs[i];
  }
  out[0] = sx;
  out[1] = sy;
  out[2] = sz;
}

Bounds3 bounds3_scalar(const double* xs, const double* ys, const double* zs,
                       std::size_t n) {
  Bounds3 b;
  constexpr double inf = std::numeric_limits<double>::infinity();
  b.lo[0] = b.lo[1] = b.lo[2] = inf;
  b.hi[0] = b.hi[1] = b.hi[2] = -inf;
  for (std::size_t i = 0; i < n; ++i) {
    b.lo[0] = std::min(b.lo[0], xs[i]);
    b.lo[1] = std::min(b.lo[1], ys[i]);
    b.lo[2] = std::min(b.lo[2], zs[i]);
    b.hi[0] = std::max(b.hi[0], xs[i]);
    b.hi[1] = std::max(b.hi[1], ys[i]);
    b.hi[2] = std::max(b.hi[2], zs[i]);
  }
  return b;
}

double max_dist2_scalar(const double* xs, const double* ys, const double* zs,
                        std::size_t n, const double c[3]) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - c[0];
    const double dy = ys[i] - c[1];
    const double dz = zs[i] - c[2];
    best = std::max(best, dx * dx + dy * dy + dz * dz);
  }
  return best;
}

std::size_t plane_inliers_scalar(const double* xs, const double* ys,
                                 const double* zs, std::size_t n,
                                 const double plane[4], double max_abs_dist) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d =
        plane[0] * xs[i] + plane[1] * ys[i] + plane[2] * zs[i] + plane[3];
    if (std::abs(d) <= max_abs_dist) ++count;
  }
  return count;
}

void transform3_scalar(double* xs, double* ys, double* zs, std::size_t n,
                       const double r[9], const double t[3]) {
  for (std::size_t i = 0; i < n; ++i) {
    const double x = xs[i], y = ys[i], z = zs[i];
    xs[i] = r[0] * x + r[1] * y + r[2] * z + t[0];
    ys[i] = r[3] * x + r[4] * y + r[5] * z + t[1];
    zs[i] = r[6] * x + r[7] * y + r[8] * z + t[2];
  }
}

Nearest nearest3_scalar(const double* xs, const double* ys, const double* zs,
                        std::size_t n, const double q[3]) {
  Nearest best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - q[0];
    const double dy = ys[i] - q[1];
    const double dz = zs[i] - q[2];
    const double d2 = dx * dx + dy * dy + dz * dz;
    if (d2 < best.dist2) {
      best.dist2 = d2;
      best.index = i;
    }
  }
  return best;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{sum3_scalar,          bounds3_scalar,
                       max_dist2_scalar,     plane_inliers_scalar,
                       transform3_scalar,    nearest3_scalar,
                       "scalar"};
  return ops;
}

}  // namespace cairn::kernels
