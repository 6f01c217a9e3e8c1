#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "cairn/io/scene_file.hpp"

namespace cairn {

/// Box primitive in the scene frame (cylinders are approximated by their
/// bounding box at specification time).
struct BoxSpec {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Eigen::Vector3d half = Eigen::Vector3d::Constant(0.1);
  double yaw = 0.0;    // about z
  double pitch = 0.0;  // about y, applied before yaw (leaning objects)

  Eigen::Matrix3d orientation() const {
    return (Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()) *
            Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitY()))
        .toRotationMatrix();
  }
};

struct ViewSpec {
  double azimuth_deg = 0.0;
  double elevation_deg = 35.0;
  double distance = 3.0;
  Eigen::Vector2d offset = Eigen::Vector2d::Zero();  // view-frame planar shift
};

/// Reproducible synthetic scene: surface-sampled boxes observed from a set of
/// ground-aligned viewpoints, with optional noise and inter-object occlusion.
struct ScenarioSpec {
  std::vector<BoxSpec> boxes;
  std::vector<ViewSpec> views;
  double points_per_area = 4000.0;  // samples per m^2 of surface
  double noise_sigma = 0.0;         // meters, per coordinate, per view
  bool occlusion = true;
  std::uint64_t seed = 0;
  SceneParameters params;
};

/// What the generator knows and the pipeline must recover.
struct GroundTruth {
  std::vector<RigidTransform> view_to_ref;        // per non-reference view
  std::vector<std::map<int, int>> label_to_ref;   // view label -> view-0 label
  std::vector<double> yaw_to_ref;                 // radians
};

/// Sample the scenario into per-view labeled clouds. Per-view labels are
/// independent namespaces (a seeded shuffle). Overlapping boxes are an error.
SceneFile generate_scene(const ScenarioSpec& spec, GroundTruth* truth = nullptr);

ScenarioSpec scenario_from_json_file(const std::filesystem::path& path);
void scenario_to_json_file(const ScenarioSpec& spec,
                           const std::filesystem::path& path);

/// Seeded random arrangement of stacked and free-standing boxes.
ScenarioSpec random_stack_scenario(std::uint64_t seed, int n_boxes, int n_views,
                                   double noise_rel = 0.0, bool occlusion = true,
                                   std::optional<double> second_view_azimuth_deg =
                                       std::nullopt);

}  // namespace cairn
