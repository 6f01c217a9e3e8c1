#pragma once

#include <cstddef>

namespace cairn::kernels {

// Arithmetic kernels over structure-of-arrays point buffers (xs/ys/zs of equal
// length). Every kernel has a scalar reference implementation; wider variants
// are selected at runtime and are equivalence-tested against the reference.

struct Bounds3 {
  double lo[3];
  double hi[3];
};

struct Nearest {
  double dist2;
  std::size_t index;
};

struct Ops {
  // out[3] += is not implied: out is overwritten with the component sums.
  void (*sum3)(const double* xs, const double* ys, const double* zs,
               std::size_t n, double out[3]);
  Bounds3 (*bounds3)(const double* xs, const double* ys, const double* zs,
                     std::size_t n);
  // max squared distance to the fixed point c
  double (*max_dist2)(const double* xs, const double* ys, const double* zs,
                      std::size_t n, const double c[3]);
  // count of points with |n.p + d| <= max_abs_dist, plane = (nx, ny, nz, d)
  std::size_t (*plane_inliers)(const double* xs, const double* ys,
                               const double* zs, std::size_t n,
                               const double plane[4], double max_abs_dist);
  // in-place p <- R p + t, R row-major
  void (*transform3)(double* xs, double* ys, double* zs, std::size_t n,
                     const double rot[9], const double trans[3]);
  // nearest point to query q; n must be >= 1
  Nearest (*nearest3)(const double* xs, const double* ys, const double* zs,
                      std::size_t n, const double q[3]);
  const char* name;
};

const Ops& scalar_ops();

// Null when the build target or the running CPU lacks AVX2+FMA.
const Ops* avx2_ops();

// Dispatch result. Honours CAIRN_SIMD=scalar|avx2 (falls back to scalar when
// the requested level is unavailable).
const Ops& active_ops();

// Test hook: pin the dispatch result; pass nullptr to restore auto-dispatch.
void force_ops(const Ops* ops);

}  // namespace cairn::kernels
