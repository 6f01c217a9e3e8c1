#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cairn/kernels/kernels.hpp"

using namespace cairn;

namespace {

struct Buffers {
  std::vector<double> xs, ys, zs;
};

Buffers random_buffers(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  Buffers b;
  for (std::size_t i = 0; i < n; ++i) {
    b.xs.push_back(u(rng));
    b.ys.push_back(u(rng));
    b.zs.push_back(u(rng));
  }
  return b;
}

}  // namespace

TEST_CASE("scalar kernels against naive loops") {
  const auto& ops = kernels::scalar_ops();
  const auto b = random_buffers(101, 7);

  double sums[3];
  ops.sum3(b.xs.data(), b.ys.data(), b.zs.data(), b.xs.size(), sums);
  double ex = 0, ey = 0, ez = 0;
  for (std::size_t i = 0; i < b.xs.size(); ++i) {
    ex += b.xs[i];
    ey += b.ys[i];
    ez += b.zs[i];
  }
  CHECK(sums[0] == doctest::Approx(ex).epsilon(1e-13));
  CHECK(sums[1] == doctest::Approx(ey).epsilon(1e-13));
  CHECK(sums[2] == doctest::Approx(ez).epsilon(1e-13));

  const auto bounds = ops.bounds3(b.xs.data(), b.ys.data(), b.zs.data(), b.xs.size());
  CHECK(bounds.lo[0] == *std::min_element(b.xs.begin(), b.xs.end()));
  CHECK(bounds.hi[2] == *std::max_element(b.zs.begin(), b.zs.end()));

  const double c[3] = {0.5, -0.5, 1.0};
  double expected_max = 0;
  for (std::size_t i = 0; i < b.xs.size(); ++i) {
    const double dx = b.xs[i] - c[0], dy = b.ys[i] - c[1], dz = b.zs[i] - c[2];
    expected_max = std::max(expected_max, dx * dx + dy * dy + dz * dz);
  }
  CHECK(ops.max_dist2(b.xs.data(), b.ys.data(), b.zs.data(), b.xs.size(), c) ==
        doctest::Approx(expected_max));

  const double plane[4] = {0, 0, 1, -0.25};
  std::size_t expected_count = 0;
  for (double z : b.zs)
    if (std::abs(z - 0.25) <= 1.0) ++expected_count;
  CHECK(ops.plane_inliers(b.xs.data(), b.ys.data(), b.zs.data(), b.xs.size(),
                          plane, 1.0) == expected_count);
}

TEST_CASE("nearest kernel finds the argmin") {
  const auto b = random_buffers(77, 11);
  const double q[3] = {0.1, 0.2, -0.3};
  const auto hit =
      kernels::scalar_ops().nearest3(b.xs.data(), b.ys.data(), b.zs.data(),
                                     b.xs.size(), q);
  double best = 1e300;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < b.xs.size(); ++i) {
    const double dx = b.xs[i] - q[0], dy = b.ys[i] - q[1], dz = b.zs[i] - q[2];
    const double d2 = dx * dx + dy * dy + dz * dz;
    if (d2 < best) {
      best = d2;
      best_i = i;
    }
  }
  CHECK(hit.index == best_i);
  CHECK(hit.dist2 == doctest::Approx(best));
}

TEST_CASE("wide variants agree with the scalar reference") {
  const auto* wide = kernels::avx2_ops();
  if (!wide) {
    MESSAGE("avx2 unavailable; dispatch stays scalar");
    CHECK(&kernels::active_ops() == &kernels::scalar_ops());
    return;
  }
  const auto& ref = kernels::scalar_ops();

  // odd sizes exercise the vector tails
  for (std::size_t n : {1u, 3u, 4u, 7u, 8u, 64u, 129u, 1000u}) {
    const auto b = random_buffers(n, 1000 + n);
    CAPTURE(n);

    double s_ref[3], s_wide[3];
    ref.sum3(b.xs.data(), b.ys.data(), b.zs.data(), n, s_ref);
    wide->sum3(b.xs.data(), b.ys.data(), b.zs.data(), n, s_wide);
    for (int k = 0; k < 3; ++k)
      CHECK(s_wide[k] == doctest::Approx(s_ref[k]).epsilon(1e-12));

    const auto br = ref.bounds3(b.xs.data(), b.ys.data(), b.zs.data(), n);
    const auto bw = wide->bounds3(b.xs.data(), b.ys.data(), b.zs.data(), n);
    for (int k = 0; k < 3; ++k) {
      CHECK(bw.lo[k] == br.lo[k]);
      CHECK(bw.hi[k] == br.hi[k]);
    }

    const double c[3] = {0.3, 0.1, -0.2};
    CHECK(wide->max_dist2(b.xs.data(), b.ys.data(), b.zs.data(), n, c) ==
          doctest::Approx(ref.max_dist2(b.xs.data(), b.ys.data(), b.zs.data(), n, c))
              .epsilon(1e-12));

    const double plane[4] = {0.6, -0.48, 0.64, 0.1};
    CHECK(wide->plane_inliers(b.xs.data(), b.ys.data(), b.zs.data(), n, plane,
                              0.8) ==
          ref.plane_inliers(b.xs.data(), b.ys.data(), b.zs.data(), n, plane, 0.8));

    const double q[3] = {-0.7, 0.4, 0.9};
    const auto hw = wide->nearest3(b.xs.data(), b.ys.data(), b.zs.data(), n, q);
    const auto hr = ref.nearest3(b.xs.data(), b.ys.data(), b.zs.data(), n, q);
    CHECK(hw.dist2 == doctest::Approx(hr.dist2).epsilon(1e-12));
    CHECK(hw.index == hr.index);

    const double rot[9] = {0.36, 0.48, -0.8, -0.8, 0.6, 0.0, 0.48, 0.64, 0.6};
    const double tr[3] = {0.5, -1.0, 2.0};
    auto m_ref = b, m_wide = b;
    ref.transform3(m_ref.xs.data(), m_ref.ys.data(), m_ref.zs.data(), n, rot, tr);
    wide->transform3(m_wide.xs.data(), m_wide.ys.data(), m_wide.zs.data(), n, rot, tr);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(m_wide.xs[i] == doctest::Approx(m_ref.xs[i]).epsilon(1e-12));
      CHECK(m_wide.ys[i] == doctest::Approx(m_ref.ys[i]).epsilon(1e-12));
      CHECK(m_wide.zs[i] == doctest::Approx(m_ref.zs[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("dispatch override hook") {
  kernels::force_ops(&kernels::scalar_ops());
  CHECK(std::string(kernels::active_ops().name) == "scalar");
  kernels::force_ops(nullptr);
}
