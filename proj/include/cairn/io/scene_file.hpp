#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cairn/geometry/types.hpp"

namespace cairn {

struct SceneParameters {
  double voxel_size = 0.0;  // 0 = auto (scene diameter / 64)
  double mu = 0.5;
  double density = 1000.0;  // kg/m^3
};

/// On-disk scene: a JSON header naming per-view point files (one `x y z label`
/// record per line), camera poses as 4x4 row-major matrices, and the pipeline
/// parameters. Label 0 is reserved for the ground and skipped on read.
struct SceneFile {
  SceneParameters params;
  std::vector<LabeledPointCloud> views;
};

/// Read a scene from a header path or a directory holding scene.json.
/// Malformed input throws ParseError with line diagnostics.
SceneFile read_scene(const std::filesystem::path& path);

/// Write scene.json plus one point file per view into dir. Values carry 9
/// significant digits.
void write_scene(const SceneFile& scene, const std::filesystem::path& dir);

/// Shift a view so its lowest point sits on the ground plane z = 0.
void align_ground(LabeledPointCloud& view);

/// Write points as `x y z label` lines.
void write_xyz(const LabeledPointCloud& view, const std::filesystem::path& file);

}  // namespace cairn
