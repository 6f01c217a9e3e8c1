#include "cairn/voxel/contact.hpp"

#include <cmath>

#include "cairn/geometry/min_rect.hpp"
#include "cairn/geometry/ransac.hpp"

namespace cairn {

ContactGraph contact_graph(const VoxelScene& scene) {
  ContactGraph g;
  scene.for_each_occupied([&](const VoxelKey& k, int label) {
    g.nodes.insert(label);
    if (scene.in_ground_layer(k)) {
      g.nodes.insert(kGroundLabel);
      g.edges.insert({kGroundLabel, label});
    }
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dz = -1; dz <= 1; ++dz) {
          if (dx == 0 && dy == 0 && dz == 0) continue;
          const int other =
              scene.occupied_label({k.x + dx, k.y + dy, k.z + dz});
          if (other >= 0 && other != label)
            g.edges.insert({std::min(label, other), std::max(label, other)});
        }
  });
  return g;
}

namespace {

std::vector<Point3> interface_voxels(const VoxelScene& scene, int obj,
                                     int other) {
  std::vector<Point3> out;
  scene.for_each_occupied([&](const VoxelKey& k, int label) {
    if (label != obj) return;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dz = -1; dz <= 1; ++dz) {
          if (dx == 0 && dy == 0 && dz == 0) continue;
          if (scene.occupied_label({k.x + dx, k.y + dy, k.z + dz}) == other) {
            out.push_back(scene.center_of(k));
            return;
          }
        }
  });
  return out;
}

ContactRegion rect_on_plane(const Plane& plane,
                            const std::vector<Point3>& pts) {
  const Eigen::Vector3d n = plane.normal;
  const Eigen::Vector3d seed =
      std::abs(n.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d u = n.cross(seed).normalized();
  const Eigen::Vector3d v = n.cross(u);
  std::vector<Eigen::Vector2d> proj;
  proj.reserve(pts.size());
  for (const auto& p : pts) {
    const Point3 on_plane = p - n * plane.signed_distance(p);
    proj.emplace_back(u.dot(on_plane), v.dot(on_plane));
  }
  const MinRect2 rect = min_area_rect(proj);
  ContactRegion region;
  int idx = 0;
  for (const auto& c : rect.corners())
    region.points[idx++] = u * c.x() + v * c.y() + n * (-plane.offset);
  region.normal = n;
  return region;
}

}  // namespace

ContactRegion contact_region(const VoxelScene& scene, int a, int b) {
  if (a == b) throw Error("contact_region: identical labels");

  if (a == kGroundLabel || b == kGroundLabel) {
    const int obj = a == kGroundLabel ? b : a;
    std::vector<Point3> base;
    scene.for_each_occupied([&](const VoxelKey& k, int label) {
      if (label == obj && scene.in_ground_layer(k)) base.push_back(scene.center_of(k));
    });
    if (base.empty()) throw Error("contact_region: labels not in contact");
    Plane ground;  // z = 0 exactly, by input contract
    ContactRegion region = rect_on_plane(ground, base);
    region.a = a;
    region.b = b;
    if (a != kGroundLabel) region.normal = -region.normal;
    if (base.size() < 3) {
      Point3 c = Point3::Zero();
      for (const auto& p : base) c += p;
      c /= static_cast<double>(base.size());
      c.z() = 0.0;
      region.points = {c, c, c, c};
      region.degenerate = true;
    }
    return region;
  }

  const auto side_a = interface_voxels(scene, a, b);
  const auto side_b = interface_voxels(scene, b, a);
  if (side_a.empty() || side_b.empty())
    throw Error("contact_region: labels not in contact");

  std::vector<Point3> all = side_a;
  all.insert(all.end(), side_b.begin(), side_b.end());
  Point3 ca = Point3::Zero(), cb = Point3::Zero();
  for (const auto& p : side_a) ca += p;
  for (const auto& p : side_b) cb += p;
  ca /= static_cast<double>(side_a.size());
  cb /= static_cast<double>(side_b.size());

  ContactRegion region;
  region.a = a;
  region.b = b;

  Plane plane;
  bool fitted = false;
  if (all.size() >= 3) {
    PointBuffer buf;
    buf.reserve(all.size());
    for (const auto& p : all) buf.push_back(p);
    try {
      plane = fit_plane(buf);
      fitted = true;
    } catch (const Error&) {
      fitted = false;
    }
  }
  if (!fitted) {
    Point3 mid = 0.5 * (ca + cb);
    Eigen::Vector3d n = cb - ca;
    if (n.norm() < 1e-12) n = Eigen::Vector3d::UnitZ();
    region.normal = n.normalized();
    region.points = {mid, mid, mid, mid};
    region.degenerate = true;
    return region;
  }

  if (plane.normal.dot(cb - ca) < 0) {
    plane.normal = -plane.normal;
    plane.offset = -plane.offset;
  }
  region = rect_on_plane(plane, all);
  region.a = a;
  region.b = b;
  return region;
}

std::vector<ContactRegion> contact_regions(const VoxelScene& scene,
                                           const ContactGraph& graph) {
  std::vector<ContactRegion> out;
  out.reserve(graph.edges.size());
  for (const auto& [a, b] : graph.edges) out.push_back(contact_region(scene, a, b));
  return out;
}

}  // namespace cairn
