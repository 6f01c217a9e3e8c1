// AVX2+FMA variants of the point-buffer kernels. This translation unit is the
// only one compiled with -mavx2 -mfma; callers reach it through the runtime
// dispatch in kernels.cpp.

#include "cairn/kernels/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace cairn::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmin(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_min_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_min_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void sum3_avx2(const double* xs, const double* ys, const double* zs,
               std::size_t n, double out[3]) {
  __m256d ax = _mm256_setzero_pd();
  __m256d ay = _mm256_setzero_pd();
  __m256d az = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    ax = _mm256_add_pd(ax, _mm256_loadu_pd(xs + i));
    ay = _mm256_add_pd(ay, _mm256_loadu_pd(ys + i));
    az = _mm256_add_pd(az, _mm256_loadu_pd(zs + i));
  }
  double sx = hsum(ax), sy = hsum(ay), sz = hsum(az);
  for (; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sz += zs[i];
  }
  out[0] = sx;
  out[1] = sy;
  out[2] = sz;
}

Bounds3 bounds3_avx2(const double* xs, const double* ys, const double* zs,
                     std::size_t n) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  __m256d lx = _mm256_set1_pd(inf), ly = lx, lz = lx;
  __m256d hx = _mm256_set1_pd(-inf), hy = hx, hz = hx;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(xs + i);
    const __m256d vy = _mm256_loadu_pd(ys + i);
    const __m256d vz = _mm256_loadu_pd(zs + i);
    lx = _mm256_min_pd(lx, vx);
    ly = _mm256_min_pd(ly, vy);
    lz = _mm256_min_pd(lz, vz);
    hx = _mm256_max_pd(hx, vx);
    hy = _mm256_max_pd(hy, vy);
    hz = _mm256_max_pd(hz, vz);
  }
  Bounds3 b;
  b.lo[0] = hmin(lx);
  b.lo[1] = hmin(ly);
  b.lo[2] = hmin(lz);
  b.hi[0] = hmax(hx);
  b.hi[1] = hmax(hy);
  b.hi[2] = hmax(hz);
  for (; i < n; ++i) {
    b.lo[0] = std::min(b.lo[0], xs[i]);
    b.lo[1] = std::min(b.lo[1], ys[i]);
    b.lo[2] = std::min(b.lo[2], zs[i]);
    b.hi[0] = std::max(b.hi[0], xs[i]);
    b.hi[1] = std::max(b.hi[1], ys[i]);
    b.hi[2] = std::max(b.hi[2], zs[i]);
  }
  return b;
}

double max_dist2_avx2(const double* xs, const double* ys, const double* zs,
                      std::size_t n, const double c[3]) {
  const __m256d cx = _mm256_set1_pd(c[0]);
  const __m256d cy = _mm256_set1_pd(c[1]);
  const __m256d cz = _mm256_set1_pd(c[2]);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), cx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), cy);
    const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(zs + i), cz);
    __m256d d2 = _mm256_mul_pd(dx, dx);
    d2 = _mm256_fmadd_pd(dy, dy, d2);
    d2 = _mm256_fmadd_pd(dz, dz, d2);
    acc = _mm256_max_pd(acc, d2);
  }
  double best = n >= 4 ? hmax(acc) : 0.0;
  for (; i < n; ++i) {
    const double dx = xs[i] - c[0];
    const double dy = ys[i] - c[1];
    const double dz = zs[i] - c[2];
    best = std::max(best, dx * dx + dy * dy + dz * dz);
  }
  return best;
}

std::size_t plane_inliers_avx2(const double* xs, const double* ys,
                               const double* zs, std::size_t n,
                               const double plane[4], double max_abs_dist) {
  const __m256d pa = _mm256_set1_pd(plane[0]);
  const __m256d pb = _mm256_set1_pd(plane[1]);
  const __m256d pc = _mm256_set1_pd(plane[2]);
  const __m256d pd = _mm256_set1_pd(plane[3]);
  const __m256d thr = _mm256_set1_pd(max_abs_dist);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = pd;
    d = _mm256_fmadd_pd(pa, _mm256_loadu_pd(xs + i), d);
    d = _mm256_fmadd_pd(pb, _mm256_loadu_pd(ys + i), d);
    d = _mm256_fmadd_pd(pc, _mm256_loadu_pd(zs + i), d);
    const __m256d ok = _mm256_cmp_pd(_mm256_and_pd(d, abs_mask), thr, _CMP_LE_OQ);
    count += static_cast<std::size_t>(_mm_popcnt_u32(
        static_cast<unsigned>(_mm256_movemask_pd(ok))));
  }
  for (; i < n; ++i) {
    const double d =
        plane[0] * xs[i] + plane[1] * ys[i] + plane[2] * zs[i] + plane[3];
    if (std::abs(d) <= max_abs_dist) ++count;
  }
  return count;
}

void transform3_avx2(double* xs, double* ys, double* zs, std::size_t n,
                     const double r[9], const double t[3]) {
  const __m256d r0 = _mm256_set1_pd(r[0]), r1 = _mm256_set1_pd(r[1]),
                r2 = _mm256_set1_pd(r[2]), r3 = _mm256_set1_pd(r[3]),
                r4 = _mm256_set1_pd(r[4]), r5 = _mm256_set1_pd(r[5]),
                r6 = _mm256_set1_pd(r[6]), r7 = _mm256_set1_pd(r[7]),
                r8 = _mm256_set1_pd(r[8]);
  const __m256d t0 = _mm256_set1_pd(t[0]), t1 = _mm256_set1_pd(t[1]),
                t2 = _mm256_set1_pd(t[2]);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(xs + i);
    const __m256d y = _mm256_loadu_pd(ys + i);
    const __m256d z = _mm256_loadu_pd(zs + i);
    __m256d nx = _mm256_fmadd_pd(r0, x, t0);
    nx = _mm256_fmadd_pd(r1, y, nx);
    nx = _mm256_fmadd_pd(r2, z, nx);
    __m256d ny = _mm256_fmadd_pd(r3, x, t1);
    ny = _mm256_fmadd_pd(r4, y, ny);
    ny = _mm256_fmadd_pd(r5, z, ny);
    __m256d nz = _mm256_fmadd_pd(r6, x, t2);
    nz = _mm256_fmadd_pd(r7, y, nz);
    nz = _mm256_fmadd_pd(r8, z, nz);
    _mm256_storeu_pd(xs + i, nx);
    _mm256_storeu_pd(ys + i, ny);
    _mm256_storeu_pd(zs + i, nz);
  }
  for (; i < n; ++i) {
    const double x = xs[i], y = ys[i], z = zs[i];
    xs[i] = r[0] * x + r[1] * y + r[2] * z + t[0];
    ys[i] = r[3] * x + r[4] * y + r[5] * z + t[1];
    zs[i] = r[6] * x + r[7] * y + r[8] * z + t[2];
  }
}

Nearest nearest3_avx2(const double* xs, const double* ys, const double* zs,
                      std::size_t n, const double q[3]) {
  const __m256d qx = _mm256_set1_pd(q[0]);
  const __m256d qy = _mm256_set1_pd(q[1]);
  const __m256d qz = _mm256_set1_pd(q[2]);
  __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256i best_idx = _mm256_setzero_si256();
  __m256i idx = _mm256_setr_epi64x(0, 1, 2, 3);
  const __m256i step = _mm256_set1_epi64x(4);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), qx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), qy);
    const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(zs + i), qz);
    __m256d d2 = _mm256_mul_pd(dx, dx);
    d2 = _mm256_fmadd_pd(dy, dy, d2);
    d2 = _mm256_fmadd_pd(dz, dz, d2);
    const __m256d lt = _mm256_cmp_pd(d2, best, _CMP_LT_OQ);
    best = _mm256_blendv_pd(best, d2, lt);
    best_idx = _mm256_blendv_epi8(best_idx, idx, _mm256_castpd_si256(lt));
    idx = _mm256_add_epi64(idx, step);
  }
  Nearest out{std::numeric_limits<double>::infinity(), 0};
  alignas(32) double d[4];
  alignas(32) long long id[4];
  _mm256_store_pd(d, best);
  _mm256_store_si256(reinterpret_cast<__m256i*>(id), best_idx);
  for (int k = 0; k < 4; ++k) {
    if (d[k] < out.dist2) {
      out.dist2 = d[k];
      out.index = static_cast<std::size_t>(id[k]);
    }
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - q[0];
    const double dy = ys[i] - q[1];
    const double dz = zs[i] - q[2];
    const double d2 = dx * dx + dy * dy + dz * dz;
    if (d2 < out.dist2) {
      out.dist2 = d2;
      out.index = i;
    }
  }
  return out;
}

}  // namespace

const Ops* avx2_ops_impl() {
  static const Ops ops{sum3_avx2,          bounds3_avx2,
                       max_dist2_avx2,     plane_inliers_avx2,
                       transform3_avx2,    nearest3_avx2,
                       "avx2"};
  return &ops;
}

}  // namespace cairn::kernels

#else

namespace cairn::kernels {
const Ops* avx2_ops_impl() { return nullptr; }
}  // namespace cairn::kernels

#endif
