#include "cairn/io/scene_file.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "cairn/io/log.hpp"

namespace cairn {

namespace {

using nlohmann::json;

std::string format9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

LabeledPointCloud read_view_points(const std::filesystem::path& file,
                                   const std::string& id) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open point file " + file.string());
  LabeledPointCloud view;
  view.view_id = id;
  std::map<int, Region> regions;
  std::string line;
  int line_no = 0;
  bool warned_ground = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    double x, y, z;
    long long label;
    if (std::sscanf(line.c_str(), "%lf %lf %lf %lld", &x, &y, &z, &label) != 4)
      throw ParseError("bad point record in " + file.string(), line_no);
    if (label < 0)
      throw ParseError("negative label in " + file.string(), line_no);
    if (label == kGroundLabel) {
      if (!warned_ground) {
        log::warn("%s: ground-labeled points ignored", file.string().c_str());
        warned_ground = true;
      }
      continue;
    }
    auto& region = regions[static_cast<int>(label)];
    region.label = static_cast<int>(label);
    region.points.push_back({x, y, z});
  }
  for (auto& [label, region] : regions) view.regions.push_back(std::move(region));
  return view;
}

RigidTransform pose_from_json(const json& j, const std::string& view_id) {
  if (!j.is_array() || j.size() != 16)
    throw ParseError("view " + view_id + ": pose must be a 16-value array");
  RigidTransform t;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) t.rotation(r, c) = j[4 * r + c].get<double>();
    t.translation[r] = j[4 * r + 3].get<double>();
  }
  if (!t.is_valid(1e-6))
    throw ParseError("view " + view_id + ": pose rotation is not orthonormal");
  return t;
}

json pose_to_json(const RigidTransform& t) {
  json j = json::array();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      if (r == 3) {
        j.push_back(c == 3 ? 1.0 : 0.0);
      } else if (c == 3) {
        j.push_back(t.translation[r]);
      } else {
        j.push_back(t.rotation(r, c));
      }
    }
  return j;
}

}  // namespace

SceneFile read_scene(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  fs::path header = path;
  if (fs::is_directory(header)) header /= "scene.json";
  std::ifstream in(header);
  if (!in) throw ParseError("cannot open scene header " + header.string());

  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("invalid scene header " + header.string() + ": " + e.what());
  }

  SceneFile scene;
  if (j.contains("parameters")) {
    const auto& p = j["parameters"];
    scene.params.voxel_size = p.value("voxel_size", 0.0);
    scene.params.mu = p.value("mu", 0.5);
    scene.params.density = p.value("density", 1000.0);
    if (scene.params.mu < 0 || scene.params.density <= 0)
      throw ParseError("invalid parameters in " + header.string());
  }
  if (!j.contains("views") || !j["views"].is_array() || j["views"].empty())
    throw ParseError("scene header lists no views: " + header.string());

  for (const auto& jv : j["views"]) {
    const std::string id = jv.value("id", "");
    if (id.empty()) throw ParseError("view without id in " + header.string());
    if (!jv.contains("points"))
      throw ParseError("view " + id + " names no point file");
    LabeledPointCloud view =
        read_view_points(header.parent_path() / jv["points"].get<std::string>(), id);
    view.view_pose = pose_from_json(jv.at("pose"), id);
    scene.views.push_back(std::move(view));
  }
  return scene;
}

void write_xyz(const LabeledPointCloud& view, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw Error("cannot write " + file.string());
  for (const auto& r : view.regions)
    for (std::size_t i = 0; i < r.points.size(); ++i) {
      const Point3 p = r.points[i];
      out << format9(p.x()) << ' ' << format9(p.y()) << ' ' << format9(p.z())
          << ' ' << r.label << '\n';
    }
}

void write_scene(const SceneFile& scene, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  json j;
  j["parameters"] = {{"voxel_size", scene.params.voxel_size},
                     {"mu", scene.params.mu},
                     {"density", scene.params.density}};
  j["views"] = json::array();
  for (const auto& view : scene.views) {
    const std::string file = view.view_id + ".xyz";
    write_xyz(view, dir / file);
    j["views"].push_back(
        {{"id", view.view_id}, {"pose", pose_to_json(view.view_pose)}, {"points", file}});
  }
  std::ofstream out(dir / "scene.json");
  if (!out) throw Error("cannot write scene header in " + dir.string());
  out << j.dump(2) << '\n';
}

void align_ground(LabeledPointCloud& view) {
  double min_z = std::numeric_limits<double>::infinity();
  for (const auto& r : view.regions)
    for (std::size_t i = 0; i < r.points.size(); ++i)
      min_z = std::min(min_z, r.points.zs()[i]);
  if (!std::isfinite(min_z) || min_z == 0.0) return;
  RigidTransform shift;
  shift.translation.z() = -min_z;
  for (auto& r : view.regions) r.points.transform_in_place(shift);
}

}  // namespace cairn
