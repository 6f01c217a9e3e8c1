#include "cairn/io/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include <json.hpp>

namespace cairn {

namespace {

using nlohmann::json;

// separating-axis test for oriented boxes, shrunk so face contact is allowed
bool boxes_overlap(const BoxSpec& a, const BoxSpec& b) {
  const Eigen::Matrix3d ra = a.orientation(), rb = b.orientation();
  const Eigen::Vector3d ha = a.half - Eigen::Vector3d::Constant(1e-9);
  const Eigen::Vector3d hb = b.half - Eigen::Vector3d::Constant(1e-9);
  std::vector<Eigen::Vector3d> axes;
  for (int i = 0; i < 3; ++i) {
    axes.push_back(ra.col(i));
    axes.push_back(rb.col(i));
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Eigen::Vector3d c = ra.col(i).cross(rb.col(j));
      if (c.norm() > 1e-9) axes.push_back(c.normalized());
    }
  const Eigen::Vector3d d = b.center - a.center;
  for (const auto& axis : axes) {
    double proj_a = 0, proj_b = 0;
    for (int i = 0; i < 3; ++i) {
      proj_a += ha[i] * std::abs(axis.dot(ra.col(i)));
      proj_b += hb[i] * std::abs(axis.dot(rb.col(i)));
    }
    if (std::abs(axis.dot(d)) > proj_a + proj_b) return false;
  }
  return true;
}

// slab test in box-local coordinates; true when the open segment (0, 1)
// crosses the box interior
bool segment_hits_box(const Point3& from, const Point3& to, const BoxSpec& box) {
  const Eigen::Matrix3d r = box.orientation();
  const Eigen::Vector3d o = r.transpose() * (from - box.center);
  const Eigen::Vector3d d = r.transpose() * (to - from);
  double t0 = 0.0, t1 = 1.0;
  for (int a = 0; a < 3; ++a) {
    const double h = box.half[a];
    if (std::abs(d[a]) < 1e-15) {
      if (o[a] < -h || o[a] > h) return false;
      continue;
    }
    double ta = (-h - o[a]) / d[a];
    double tb = (h - o[a]) / d[a];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
  }
  return t0 < t1 - 1e-9 && t1 > 1e-9 && t0 < 1.0 - 1e-6;
}

struct FacePoint {
  Point3 p;               // scene frame
  Eigen::Vector3d n;      // outward face normal, scene frame
  int object;             // scenario box index
};

std::vector<FacePoint> sample_surfaces(const ScenarioSpec& spec,
                                       std::mt19937_64& rng) {
  std::vector<FacePoint> out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int obj = 0; obj < static_cast<int>(spec.boxes.size()); ++obj) {
    const BoxSpec& box = spec.boxes[obj];
    const Eigen::Matrix3d r = box.orientation();
    for (int axis = 0; axis < 3; ++axis) {
      const int u = (axis + 1) % 3, v = (axis + 2) % 3;
      const double area = 4.0 * box.half[u] * box.half[v];
      const int count =
          std::max(8, static_cast<int>(std::lround(area * spec.points_per_area)));
      for (int side : {-1, 1}) {
        const Eigen::Vector3d n = r.col(axis) * side;
        for (int i = 0; i < count; ++i) {
          Eigen::Vector3d local;
          local[axis] = side * box.half[axis];
          local[u] = (2.0 * unit(rng) - 1.0) * box.half[u];
          local[v] = (2.0 * unit(rng) - 1.0) * box.half[v];
          out.push_back({box.center + r * local, n, obj});
        }
      }
    }
  }
  return out;
}

}  // namespace

SceneFile generate_scene(const ScenarioSpec& spec, GroundTruth* truth) {
  if (spec.boxes.empty()) throw Error("generate_scene: no boxes");
  if (spec.views.empty()) throw Error("generate_scene: no views");
  for (std::size_t i = 0; i < spec.boxes.size(); ++i)
    for (std::size_t j = i + 1; j < spec.boxes.size(); ++j)
      if (boxes_overlap(spec.boxes[i], spec.boxes[j]))
        throw Error("generate_scene: boxes " + std::to_string(i) + " and " +
                    std::to_string(j) + " overlap");

  std::mt19937_64 rng(spec.seed);
  const auto surface = sample_surfaces(spec, rng);

  Eigen::Vector3d look = Eigen::Vector3d::Zero();
  for (const auto& b : spec.boxes) look += b.center;
  look /= static_cast<double>(spec.boxes.size());

  SceneFile scene;
  scene.params = spec.params;
  if (truth) *truth = GroundTruth{};

  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n_objects = static_cast<int>(spec.boxes.size());

  std::vector<std::vector<int>> perms;  // object index -> view label - 1
  for (std::size_t v = 0; v < spec.views.size(); ++v) {
    std::vector<int> perm(n_objects);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    perms.push_back(perm);
  }

  for (std::size_t v = 0; v < spec.views.size(); ++v) {
    const ViewSpec& vs = spec.views[v];
    const double az = vs.azimuth_deg * M_PI / 180.0;
    const double el = vs.elevation_deg * M_PI / 180.0;
    const Point3 cam_scene =
        look + vs.distance * Eigen::Vector3d(std::cos(el) * std::cos(az),
                                             std::cos(el) * std::sin(az),
                                             std::sin(el));
    // view frame: scene yawed by -az, then shifted in the plane
    const Eigen::Matrix3d r_view =
        Eigen::AngleAxisd(-az, Eigen::Vector3d::UnitZ()).toRotationMatrix();
    const Eigen::Vector3d shift(vs.offset.x(), vs.offset.y(), 0.0);

    LabeledPointCloud view;
    view.view_id = "view_" + std::to_string(v);

    std::map<int, Region> regions;
    for (const auto& fp : surface) {
      if (fp.n.dot(cam_scene - fp.p) <= 1e-9) continue;  // back face
      if (spec.occlusion) {
        bool blocked = false;
        for (int o = 0; o < n_objects && !blocked; ++o)
          if (o != fp.object && segment_hits_box(cam_scene, fp.p, spec.boxes[o]))
            blocked = true;
        if (blocked) continue;
      }
      Point3 p = fp.p;
      if (spec.noise_sigma > 0)
        p += spec.noise_sigma *
             Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
      const int label = perms[v][fp.object] + 1;
      auto& region = regions[label];
      region.label = label;
      region.points.push_back(r_view * p + shift);
    }
    for (auto& [label, region] : regions) view.regions.push_back(std::move(region));

    // camera pose in the view frame, oriented to look at the stack
    const Point3 cam_view = r_view * cam_scene + shift;
    const Point3 look_view = r_view * look + shift;
    Eigen::Vector3d fwd = (look_view - cam_view).normalized();
    Eigen::Vector3d right = fwd.cross(Eigen::Vector3d::UnitZ());
    if (right.norm() < 1e-9) right = Eigen::Vector3d::UnitX();
    right.normalize();
    const Eigen::Vector3d down = fwd.cross(right);
    view.view_pose.rotation.col(0) = right;
    view.view_pose.rotation.col(1) = down;
    view.view_pose.rotation.col(2) = fwd;
    view.view_pose.translation = cam_view;
    scene.views.push_back(std::move(view));

    if (truth && v > 0) {
      // p_scene = r_view^T (p_view - shift); into view 0's frame
      const double az0 = spec.views[0].azimuth_deg * M_PI / 180.0;
      const Eigen::Matrix3d r0 =
          Eigen::AngleAxisd(-az0, Eigen::Vector3d::UnitZ()).toRotationMatrix();
      const Eigen::Vector3d shift0(spec.views[0].offset.x(),
                                   spec.views[0].offset.y(), 0.0);
      RigidTransform t;
      t.rotation = r0 * r_view.transpose();
      t.translation = shift0 - t.rotation * shift;
      truth->view_to_ref.push_back(t);
      truth->yaw_to_ref.push_back(
          std::remainder(az - az0, 2.0 * M_PI));
      std::map<int, int> labels;
      for (int obj = 0; obj < n_objects; ++obj)
        labels[perms[v][obj] + 1] = perms[0][obj] + 1;
      truth->label_to_ref.push_back(std::move(labels));
    }
  }
  return scene;
}

namespace {

json vec3_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d vec3_from(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

}  // namespace

ScenarioSpec scenario_from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("invalid scenario " + path.string() + ": " + e.what());
  }
  ScenarioSpec spec;
  try {
    for (const auto& jb : j.at("boxes")) {
      BoxSpec box;
      box.center = vec3_from(jb.at("center"));
      box.half = vec3_from(jb.at("half"));
      box.yaw = jb.value("yaw_deg", 0.0) * M_PI / 180.0;
      box.pitch = jb.value("pitch_deg", 0.0) * M_PI / 180.0;
      spec.boxes.push_back(box);
    }
    for (const auto& jv : j.at("views")) {
      ViewSpec view;
      view.azimuth_deg = jv.value("azimuth_deg", 0.0);
      view.elevation_deg = jv.value("elevation_deg", 35.0);
      view.distance = jv.value("distance", 3.0);
      if (jv.contains("offset"))
        view.offset = {jv["offset"].at(0).get<double>(),
                       jv["offset"].at(1).get<double>()};
      spec.views.push_back(view);
    }
    spec.points_per_area = j.value("points_per_area", 4000.0);
    spec.noise_sigma = j.value("noise_sigma", 0.0);
    spec.occlusion = j.value("occlusion", true);
    spec.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("parameters")) {
      const auto& p = j["parameters"];
      spec.params.voxel_size = p.value("voxel_size", 0.0);
      spec.params.mu = p.value("mu", 0.5);
      spec.params.density = p.value("density", 1000.0);
    }
  } catch (const json::exception& e) {
    throw ParseError("invalid scenario " + path.string() + ": " + e.what());
  }
  return spec;
}

void scenario_to_json_file(const ScenarioSpec& spec,
                           const std::filesystem::path& path) {
  json j;
  j["boxes"] = json::array();
  for (const auto& b : spec.boxes)
    j["boxes"].push_back({{"center", vec3_json(b.center)},
                          {"half", vec3_json(b.half)},
                          {"yaw_deg", b.yaw * 180.0 / M_PI},
                          {"pitch_deg", b.pitch * 180.0 / M_PI}});
  j["views"] = json::array();
  for (const auto& v : spec.views)
    j["views"].push_back({{"azimuth_deg", v.azimuth_deg},
                          {"elevation_deg", v.elevation_deg},
                          {"distance", v.distance},
                          {"offset", json::array({v.offset.x(), v.offset.y()})}});
  j["points_per_area"] = spec.points_per_area;
  j["noise_sigma"] = spec.noise_sigma;
  j["occlusion"] = spec.occlusion;
  j["seed"] = spec.seed;
  j["parameters"] = {{"voxel_size", spec.params.voxel_size},
                     {"mu", spec.params.mu},
                     {"density", spec.params.density}};
  std::ofstream out(path);
  if (!out) throw Error("cannot write scenario " + path.string());
  out << j.dump(2) << '\n';
}

ScenarioSpec random_stack_scenario(std::uint64_t seed, int n_boxes, int n_views,
                                   double noise_rel, bool occlusion,
                                   std::optional<double> second_view_azimuth_deg) {
  if (n_boxes < 1 || n_views < 1)
    throw Error("random_stack_scenario: need at least one box and one view");
  std::mt19937_64 rng(seed ^ 0x5eedf00dULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  ScenarioSpec spec;
  spec.seed = seed;
  spec.occlusion = occlusion;

  double edge_sum = 0.0;
  for (int i = 0; i < n_boxes; ++i) {
    BoxSpec box;
    box.half = {0.07 + 0.1 * unit(rng), 0.07 + 0.1 * unit(rng),
                0.07 + 0.1 * unit(rng)};
    edge_sum += 2.0 * box.half.mean();
    box.yaw = unit(rng) * M_PI;
    bool placed = false;
    if (i > 0 && unit(rng) < 0.45) {  // stack on an earlier box
      for (int attempt = 0; attempt < 20 && !placed; ++attempt) {
        const int parent_id =
            static_cast<int>(unit(rng) * i) % i;
        const BoxSpec& parent = spec.boxes[parent_id];
        if (parent.yaw != 0.0 && std::abs(parent.yaw) > 1e-12) {
          // keep stacks axis-aligned with the parent for a stable footprint
          box.yaw = parent.yaw;
        }
        const double mx = std::max(0.0, parent.half.x() - box.half.x());
        const double my = std::max(0.0, parent.half.y() - box.half.y());
        if (mx <= 0 && my <= 0 && (box.half.x() > parent.half.x() ||
                                   box.half.y() > parent.half.y()))
          continue;  // would overhang the whole footprint
        const Eigen::Vector3d local(0.6 * (2 * unit(rng) - 1) * mx,
                                    0.6 * (2 * unit(rng) - 1) * my,
                                    parent.half.z() + box.half.z());
        box.center = parent.center + parent.orientation() * local;
        placed = true;
        for (int o = 0; o < i; ++o)
          if (boxes_overlap(box, spec.boxes[o])) placed = false;
      }
    }
    for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
      const double radius = 0.25 + 0.6 * unit(rng);
      const double angle = unit(rng) * 2.0 * M_PI;
      box.center = {radius * std::cos(angle), radius * std::sin(angle),
                    box.half.z()};
      placed = true;
      for (int o = 0; o < i; ++o) {
        BoxSpec padded = spec.boxes[o];
        padded.half += Eigen::Vector3d::Constant(0.02);
        if (boxes_overlap(box, padded)) placed = false;
      }
    }
    if (!placed) throw Error("random_stack_scenario: placement failed");
    spec.boxes.push_back(box);
  }
  spec.noise_sigma = noise_rel * (edge_sum / n_boxes);

  for (int v = 0; v < n_views; ++v) {
    ViewSpec view;
    if (v == 0) {
      view.azimuth_deg = 0.0;
    } else if (v == 1 && second_view_azimuth_deg) {
      view.azimuth_deg = *second_view_azimuth_deg;
    } else {
      view.azimuth_deg = 360.0 * unit(rng);
    }
    view.elevation_deg = 25.0 + 20.0 * unit(rng);
    view.distance = 2.5 + unit(rng);
    view.offset = {0.4 * (2 * unit(rng) - 1), 0.4 * (2 * unit(rng) - 1)};
    spec.views.push_back(view);
  }
  return spec;
}

}  // namespace cairn
