#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cstdint>
#include <string>
#include <vector>

#include "cairn/error.hpp"
#include "cairn/kernels/kernels.hpp"

namespace cairn {

using Point3 = Eigen::Vector3d;

/// Rotation + translation, rotation orthonormal with determinant +1.
struct RigidTransform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static RigidTransform identity() { return {}; }

  static RigidTransform about_z(double yaw,
                                const Eigen::Vector3d& t = Eigen::Vector3d::Zero()) {
    RigidTransform out;
    out.rotation = Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix();
    out.translation = t;
    return out;
  }

  Point3 operator*(const Point3& p) const { return rotation * p + translation; }

  RigidTransform operator*(const RigidTransform& o) const {
    return {rotation * o.rotation, rotation * o.translation + translation};
  }

  RigidTransform inverse() const {
    return {rotation.transpose(), -(rotation.transpose() * translation)};
  }

  bool is_valid(double tol = 1e-9) const {
    const Eigen::Matrix3d g = rotation.transpose() * rotation;
    return (g - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= tol &&
           std::abs(rotation.determinant() - 1.0) <= tol;
  }
};

/// Structure-of-arrays point storage; the layout the kernels operate on.
class PointBuffer {
 public:
  PointBuffer() = default;

  std::size_t size() const { return xs_.size(); }
  bool empty() const { return xs_.empty(); }

  void reserve(std::size_t n) {
    xs_.reserve(n);
    ys_.reserve(n);
    zs_.reserve(n);
  }

  void push_back(const Point3& p) {
    xs_.push_back(p.x());
    ys_.push_back(p.y());
    zs_.push_back(p.z());
  }

  Point3 operator[](std::size_t i) const { return {xs_[i], ys_[i], zs_[i]}; }

  void set(std::size_t i, const Point3& p) {
    xs_[i] = p.x();
    ys_[i] = p.y();
    zs_[i] = p.z();
  }

  void append(const PointBuffer& o) {
    xs_.insert(xs_.end(), o.xs_.begin(), o.xs_.end());
    ys_.insert(ys_.end(), o.ys_.begin(), o.ys_.end());
    zs_.insert(zs_.end(), o.zs_.begin(), o.zs_.end());
  }

  const double* xs() const { return xs_.data(); }
  const double* ys() const { return ys_.data(); }
  const double* zs() const { return zs_.data(); }
  double* xs() { return xs_.data(); }
  double* ys() { return ys_.data(); }
  double* zs() { return zs_.data(); }

  void transform_in_place(const RigidTransform& t) {
    double r[9], tr[3];
    Eigen::Map<Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(r) = t.rotation;
    Eigen::Map<Eigen::Vector3d>(tr) = t.translation;
    kernels::active_ops().transform3(xs_.data(), ys_.data(), zs_.data(), size(), r, tr);
  }

  PointBuffer transformed(const RigidTransform& t) const {
    PointBuffer out = *this;
    out.transform_in_place(t);
    return out;
  }

 private:
  std::vector<double> xs_, ys_, zs_;
};

/// A labeled point set — one segmented object within a view.
struct Region {
  int label = 0;
  PointBuffer points;
};

/// Per-view pipeline input: segmented regions in a ground-aligned frame
/// (ground plane z = 0), plus the camera pose in that frame.
struct LabeledPointCloud {
  std::string view_id;
  RigidTransform view_pose;  // camera pose; translation = camera position
  std::vector<Region> regions;

  const Region* find(int label) const {
    for (const auto& r : regions)
      if (r.label == label) return &r;
    return nullptr;
  }
};

/// Axis-aligned rectangle on the ground plane.
struct MBR2 {
  double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;

  double x_center() const { return 0.5 * (x_lo + x_hi); }
  double y_center() const { return 0.5 * (y_lo + y_hi); }
  double width() const { return x_hi - x_lo; }
  double height() const { return y_hi - y_lo; }
};

/// Plane in Hessian normal form: normal.p + offset = 0, |normal| = 1.
struct Plane {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  double offset = 0.0;

  double signed_distance(const Point3& p) const { return normal.dot(p) + offset; }
};

/// Oriented bounding box; axes are the orthonormal columns of `axes`.
struct OMBB3 {
  Point3 center = Point3::Zero();
  Eigen::Matrix3d axes = Eigen::Matrix3d::Identity();
  Eigen::Vector3d half_extents = Eigen::Vector3d::Zero();
  bool degenerate_fallback = false;  // axis-aligned fallback was taken

  double volume() const {
    return 8.0 * half_extents.x() * half_extents.y() * half_extents.z();
  }

  bool contains(const Point3& p, double slack = 0.0) const {
    const Eigen::Vector3d d = axes.transpose() * (p - center);
    return std::abs(d.x()) <= half_extents.x() + slack &&
           std::abs(d.y()) <= half_extents.y() + slack &&
           std::abs(d.z()) <= half_extents.z() + slack;
  }

  std::vector<Point3> corners() const {
    std::vector<Point3> out;
    out.reserve(8);
    for (int sx : {-1, 1})
      for (int sy : {-1, 1})
        for (int sz : {-1, 1})
          out.push_back(center + axes * Eigen::Vector3d(sx * half_extents.x(),
                                                        sy * half_extents.y(),
                                                        sz * half_extents.z()));
    return out;
  }
};

}  // namespace cairn
