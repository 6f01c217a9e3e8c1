#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cairn/geometry/min_rect.hpp"
#include "cairn/geometry/ombb.hpp"
#include "cairn/geometry/ransac.hpp"
#include "cairn/geometry/stats.hpp"

using namespace cairn;

namespace {

Region make_region(int label, const std::vector<Point3>& pts) {
  Region r;
  r.label = label;
  for (const auto& p : pts) r.points.push_back(p);
  return r;
}

RigidTransform random_rigid(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Eigen::Quaterniond q =
      Eigen::Quaterniond(u(rng), u(rng), u(rng), u(rng)).normalized();
  RigidTransform t;
  t.rotation = q.toRotationMatrix();
  t.translation = {u(rng), u(rng), u(rng)};
  return t;
}

// test-only oracle: convex hull volume by brute-force facet enumeration
double hull_volume_oracle(const std::vector<Point3>& pts) {
  const std::size_t n = pts.size();
  Point3 inner = Point3::Zero();
  for (const auto& p : pts) inner += p;
  inner /= static_cast<double>(n);

  double volume = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Eigen::Vector3d normal =
            (pts[j] - pts[i]).cross(pts[k] - pts[i]);
        if (normal.norm() < 1e-12) continue;
        int pos = 0, neg = 0;
        for (std::size_t l = 0; l < n; ++l) {
          const double s = normal.dot(pts[l] - pts[i]);
          if (s > 1e-9) ++pos;
          if (s < -1e-9) ++neg;
        }
        if (pos > 0 && neg > 0) continue;  // not a hull facet
        // tetrahedron from the inner point to the facet triangle; random
        // inputs are in general position, so every hull face is a triangle
        // and shows up exactly once
        const double v = (pts[i] - inner).dot((pts[j] - inner).cross(pts[k] - inner));
        volume += std::abs(v) / 6.0;
      }
  return volume;
}

}  // namespace

TEST_CASE("region centroid basics") {
  CHECK(region_centroid(make_region(1, {{0, 0, 0}, {2, 0, 0}})) == Point3(1, 0, 0));
  CHECK(region_centroid(make_region(1, {{1, 1, 1}})) == Point3(1, 1, 1));
  CHECK_THROWS_AS(region_centroid(Region{}), Error);
}

TEST_CASE("centroid of uniform cube samples is near the cube center") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Region r;
  r.label = 1;
  double sx = 0, sy = 0, sz = 0;  // independent summation
  for (int i = 0; i < 1000; ++i) {
    const Point3 p{u(rng), u(rng), u(rng)};
    r.points.push_back(p);
    sx += p.x();
    sy += p.y();
    sz += p.z();
  }
  const Point3 c = region_centroid(r);
  CHECK(c.x() == doctest::Approx(sx / 1000).epsilon(1e-12));
  CHECK(c.y() == doctest::Approx(sy / 1000).epsilon(1e-12));
  CHECK((c - Point3(0.5, 0.5, 0.5)).norm() < 0.05);
}

TEST_CASE("region radius") {
  CHECK(region_radius(make_region(1, {{0, 0, 0}, {2, 0, 0}})) == doctest::Approx(1.0));
  CHECK(region_radius(make_region(1, {{1, 1, 1}})) == doctest::Approx(0.0));
  std::vector<Point3> corners;
  for (int sx : {0, 1})
    for (int sy : {0, 1})
      for (int sz : {0, 1}) corners.push_back({double(sx), double(sy), double(sz)});
  CHECK(region_radius(make_region(1, corners)) ==
        doctest::Approx(std::sqrt(3.0) / 2.0));
}

TEST_CASE("centroid is rigid-transform equivariant") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Region r;
  r.label = 3;
  for (int i = 0; i < 50; ++i) r.points.push_back({u(rng), u(rng), u(rng)});
  for (int trial = 0; trial < 10; ++trial) {
    const RigidTransform t = random_rigid(rng);
    REQUIRE(t.is_valid(1e-12));
    Region moved = r;
    moved.points.transform_in_place(t);
    const Point3 lhs = region_centroid(moved);
    const Point3 rhs = t * region_centroid(r);
    CHECK((lhs - rhs).norm() < 1e-9);
    CHECK(region_radius(moved) == doctest::Approx(region_radius(r)).epsilon(1e-9));
  }
}

TEST_CASE("project_mbr") {
  std::vector<Point3> cube;
  for (int sx : {0, 1})
    for (int sy : {0, 1})
      for (int sz : {0, 1}) cube.push_back({double(sx), double(sy), double(sz)});
  const MBR2 m = project_mbr(make_region(1, cube));
  CHECK(m.x_lo == 0.0);
  CHECK(m.x_hi == 1.0);
  CHECK(m.y_lo == 0.0);
  CHECK(m.y_hi == 1.0);

  const MBR2 pt = project_mbr(make_region(1, {{1, 2, 5}}));
  CHECK(pt.x_lo == 1.0);
  CHECK(pt.x_hi == 1.0);
  CHECK(pt.y_lo == 2.0);
  CHECK(pt.y_hi == 2.0);

  // cube with side 1 centered at the origin, rotated 45 degrees about z:
  // the projection corners land at +-sqrt(2)/2
  Region rotated;
  rotated.label = 2;
  const double a = M_PI / 4.0;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1}) {
        const double x = 0.5 * sx, y = 0.5 * sy;
        rotated.points.push_back({x * std::cos(a) - y * std::sin(a),
                                  x * std::sin(a) + y * std::cos(a), 0.5 * sz});
      }
  const MBR2 mr = project_mbr(rotated);
  const double h = std::sqrt(2.0) / 2.0;
  CHECK(mr.x_lo == doctest::Approx(-h));
  CHECK(mr.x_hi == doctest::Approx(h));
  CHECK(mr.y_lo == doctest::Approx(-h));
  CHECK(mr.y_hi == doctest::Approx(h));

  // pure z-translation leaves the projection unchanged
  Region shifted = rotated;
  RigidTransform up;
  up.translation = {0, 0, 3.0};
  shifted.points.transform_in_place(up);
  const MBR2 ms = project_mbr(shifted);
  CHECK(ms.x_lo == mr.x_lo);
  CHECK(ms.y_hi == mr.y_hi);
}

TEST_CASE("ransac plane on a dominant plane with outliers") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PointBuffer pts;
  for (int i = 0; i < 100; ++i) pts.push_back({u(rng), u(rng), 0.0});
  for (int i = 0; i < 5; ++i) pts.push_back({u(rng), u(rng), 1.0});

  RansacConfig cfg;
  cfg.inlier_threshold = 0.01;
  const auto fit = ransac_plane(pts, cfg);
  CHECK(std::abs(fit.plane.normal.z()) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fit.inliers.size() >= 100);

  // inlier counting oracle
  std::size_t direct = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (std::abs(fit.plane.signed_distance(pts[i])) <= cfg.inlier_threshold)
      ++direct;
  CHECK(direct == fit.inliers.size());
}

TEST_CASE("ransac plane with exactly 3 points") {
  PointBuffer pts;
  pts.push_back({0, 0, 0});
  pts.push_back({1, 0, 0});
  pts.push_back({0, 1, 1});
  RansacConfig cfg;
  cfg.inlier_threshold = 1e-6;
  const auto fit = ransac_plane(pts, cfg);
  CHECK(fit.inliers.size() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(fit.plane.signed_distance(pts[i])) < 1e-9);
}

TEST_CASE("ransac plane prefers the larger of two parallel planes") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PointBuffer pts;
  for (int i = 0; i < 80; ++i) pts.push_back({u(rng), u(rng), 0.0});
  for (int i = 0; i < 20; ++i) pts.push_back({u(rng), u(rng), 0.5});
  RansacConfig cfg;
  cfg.inlier_threshold = 0.02;
  const auto fit = ransac_plane(pts, cfg);
  std::size_t low = 0;
  for (auto idx : fit.inliers)
    if (std::abs(pts[idx].z()) < 0.1) ++low;
  CHECK(low >= 80);  // the winning plane is z = 0
  CHECK(fit.inliers.size() < 100);
}

TEST_CASE("ransac plane rejects collinear input") {
  PointBuffer pts;
  for (int i = 0; i < 10; ++i) pts.push_back({double(i), 0.0, 0.0});
  RansacConfig cfg;
  CHECK_THROWS_AS(ransac_plane(pts, cfg), Error);
}

TEST_CASE("min_area_rect of an axis-aligned rectangle") {
  std::vector<Eigen::Vector2d> pts = {{0, 0}, {2, 0}, {2, 1}, {0, 1}, {1, 0.5}};
  const MinRect2 rect = min_area_rect(pts);
  CHECK(rect.area() == doctest::Approx(2.0));
  CHECK(std::max(rect.half_u, rect.half_v) == doctest::Approx(1.0));
  CHECK(std::min(rect.half_u, rect.half_v) == doctest::Approx(0.5));
}

TEST_CASE("ombb_from_plane recovers a unit cube") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Region cube;
  cube.label = 1;
  // sample all six faces
  for (int i = 0; i < 600; ++i) {
    const int face = i % 6;
    const double a = u(rng), b = u(rng);
    Point3 p;
    if (face == 0) p = {0, a, b};
    if (face == 1) p = {1, a, b};
    if (face == 2) p = {a, 0, b};
    if (face == 3) p = {a, 1, b};
    if (face == 4) p = {a, b, 0};
    if (face == 5) p = {a, b, 1};
    cube.points.push_back(p);
  }
  RansacConfig cfg;
  cfg.inlier_threshold = 1e-3;
  const auto fit = ransac_plane(cube.points, cfg);
  const OMBB3 box = ombb_from_plane(cube, fit.plane);
  CHECK(box.volume() == doctest::Approx(1.0).epsilon(0.05));
  CHECK(box.half_extents.minCoeff() == doctest::Approx(0.5).epsilon(0.05));

  // same cube rotated 30 degrees about z keeps the extents
  Region rot = cube;
  rot.points.transform_in_place(RigidTransform::about_z(M_PI / 6.0));
  const auto fit_r = ransac_plane(rot.points, cfg);
  const OMBB3 box_r = ombb_from_plane(rot, fit_r.plane);
  CHECK(box_r.volume() == doctest::Approx(1.0).epsilon(0.05));

  // the axis-aligned bounding box of the rotated cube is strictly larger
  const MBR2 mbr = project_mbr(rot);
  CHECK(mbr.width() * mbr.height() > 1.2);
}

TEST_CASE("ombb of a thin plate stays close to the true volume") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Region plate;
  plate.label = 1;
  for (int i = 0; i < 400; ++i) {
    const double z = (i % 2) ? 0.0 : 0.01;
    plate.points.push_back({u(rng), u(rng), z});
  }
  RansacConfig cfg;
  cfg.inlier_threshold = 1e-3;
  const auto fit = ransac_plane(plate.points, cfg);
  const OMBB3 box = ombb_from_plane(plate, fit.plane);
  CHECK(box.volume() <= 1.2 * 0.01);
}

TEST_CASE("ombb volume dominates the hull volume") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Region r;
    r.label = 1;
    std::vector<Point3> pts;
    const int n = 10 + trial;
    for (int i = 0; i < n; ++i) {
      const Point3 p{u(rng), u(rng), u(rng)};
      pts.push_back(p);
      r.points.push_back(p);
    }
    const Plane plane = fit_plane(r.points);
    const OMBB3 box = ombb_from_plane(r, plane);
    for (const auto& p : pts) CHECK(box.contains(p, 1e-9));
    CHECK(box.volume() >= hull_volume_oracle(pts) - 1e-9);
  }
}
