#include "cairn/io/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "cairn/geometry/stats.hpp"
#include "cairn/io/log.hpp"
#include "cairn/qsr/neighborhood.hpp"
#include "cairn/voxel/carve.hpp"

namespace cairn {

namespace {

using nlohmann::json;

// Pair views by descending point count when matching is impossible (a view
// with a single region); ICP still refines the identity seed.
std::map<int, int> size_order_map(const LabeledPointCloud& ref,
                                  const LabeledPointCloud& other) {
  auto order = [](const LabeledPointCloud& v) {
    std::vector<std::pair<std::size_t, int>> sizes;
    for (const auto& r : v.regions) sizes.push_back({r.points.size(), r.label});
    std::sort(sizes.begin(), sizes.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    return sizes;
  };
  const auto ref_order = order(ref);
  const auto other_order = order(other);
  std::map<int, int> out;
  for (std::size_t i = 0; i < std::min(ref_order.size(), other_order.size()); ++i)
    out[other_order[i].second] = ref_order[i].second;
  return out;
}

PointBuffer all_points(const LabeledPointCloud& view) {
  PointBuffer out;
  for (const auto& r : view.regions) out.append(r.points);
  return out;
}

}  // namespace

ViewRegistration match_views(const LabeledPointCloud& a, const LabeledPointCloud& b,
                             bool run_icp, const IcpConfig& cfg) {
  ViewRegistration reg;
  reg.view_a = a.view_id;
  reg.view_b = b.view_id;
  if (a.regions.size() >= 2 && b.regions.size() >= 2) {
    const RelationGraph ga = build_relation_graph(a);
    const RelationGraph gb = build_relation_graph(b);
    reg.match = get_matched_objects(ga, gb);
    reg.guess = estimate_initial_transform(reg.match, a, b);
  } else {
    log::info("view %s or %s has a single region; identity seed",
              a.view_id.c_str(), b.view_id.c_str());
    for (const auto& [from, to] : size_order_map(a, b))
      reg.match.pairs.push_back({to, from});
    std::sort(reg.match.pairs.begin(), reg.match.pairs.end());
    reg.match.score = std::numeric_limits<double>::quiet_NaN();
    if (!reg.match.pairs.empty()) {
      Point3 ca = Point3::Zero(), cb = Point3::Zero();
      for (const auto& [la, lb] : reg.match.pairs) {
        ca += region_centroid(*a.find(la));
        cb += region_centroid(*b.find(lb));
      }
      reg.guess.translation = (ca - cb) / static_cast<double>(reg.match.pairs.size());
    }
  }
  if (run_icp)
    reg.icp = icp(all_points(b), all_points(a), reg.guess.transform(), cfg);
  return reg;
}

AnalyzeReport analyze_scene(const SceneFile& scene, const PipelineOptions& opts) {
  if (scene.views.empty()) throw Error("analyze_scene: no views");

  const double voxel_size =
      opts.voxel_size > 0 ? opts.voxel_size : scene.params.voxel_size;
  const double mu = opts.mu >= 0 ? opts.mu : scene.params.mu;
  const double density = opts.density > 0 ? opts.density : scene.params.density;

  // register everything into the first view's frame
  std::vector<RigidTransform> transforms;
  std::vector<LabeledPointCloud> canonical_views;
  canonical_views.push_back(scene.views.front());
  std::vector<ViewRegistration> registrations;

  int next_label = 0;
  for (const auto& r : scene.views.front().regions)
    next_label = std::max(next_label, r.label + 1);

  for (std::size_t v = 1; v < scene.views.size(); ++v) {
    ViewRegistration reg =
        match_views(scene.views.front(), scene.views[v], true, opts.icp);
    transforms.push_back(reg.icp.transform);

    std::map<int, int> to_ref;
    for (const auto& [la, lb] : reg.match.pairs) to_ref[lb] = la;
    LabeledPointCloud view = scene.views[v];
    for (auto& r : view.regions) {
      const auto it = to_ref.find(r.label);
      r.label = it != to_ref.end() ? it->second : next_label++;
    }
    canonical_views.push_back(std::move(view));
    registrations.push_back(std::move(reg));
  }

  VoxelScene voxels = carve(canonical_views, transforms, voxel_size);
  complete_all(voxels);

  AnalyzeReport report{std::move(registrations),
                       std::move(voxels),
                       {},
                       {},
                       {},
                       {},
                       0,
                       false,
                       {}};
  report.contacts = contact_graph(report.scene);
  report.regions = contact_regions(report.scene, report.contacts);

  // relaxation ladder: grow degenerate contacts, then raise friction once
  const auto grow_degenerate = [&](std::vector<ContactRegion> regions) {
    const double h = report.scene.voxel_size();
    for (auto& region : regions) {
      if (!region.degenerate) continue;
      const Eigen::Vector3d n = region.normal;
      const Eigen::Vector3d seed = std::abs(n.x()) < 0.9
                                       ? Eigen::Vector3d::UnitX()
                                       : Eigen::Vector3d::UnitY();
      const Eigen::Vector3d u = n.cross(seed).normalized();
      const Eigen::Vector3d v = n.cross(u);
      const Point3 c = region.points[0];
      region.points = {c - u * h - v * h, c + u * h - v * h, c + u * h + v * h,
                       c - u * h + v * h};
    }
    return regions;
  };

  std::vector<RigidBody> bodies;
  for (int label : report.scene.labels()) {
    RigidBody body;
    body.label = label;
    body.mass = report.scene.object_volume(label) * density;
    body.centroid = report.scene.object_centroid(label);
    bodies.push_back(body);
  }

  struct Attempt {
    int level;
    std::vector<ContactRegion> regions;
    double mu;
  };
  const bool any_degenerate =
      std::any_of(report.regions.begin(), report.regions.end(),
                  [](const auto& r) { return r.degenerate; });
  std::vector<Attempt> ladder;
  ladder.push_back({0, report.regions, mu});
  if (any_degenerate) ladder.push_back({1, grow_degenerate(report.regions), mu});
  ladder.push_back({2,
                    any_degenerate ? grow_degenerate(report.regions)
                                   : report.regions,
                    1.5 * mu});

  for (const auto& attempt : ladder) {
    EquilibriumProblem problem =
        assemble_from_bodies(bodies, attempt.regions, attempt.mu);
    const StabilityResult result = is_stable(problem);
    if (result.stable) {
      report.problem = std::move(problem);
      report.equilibrium = result;
      report.relaxation_level = attempt.level;
      report.explained = true;
      break;
    }
  }
  if (!report.explained) {
    report.relaxation_level = 3;
    report.problem = assemble_from_bodies(bodies, report.regions, mu);
    report.equilibrium = is_stable(report.problem);
    return report;
  }

  report.support = core_supporters(report.problem, opts.removal);
  return report;
}

std::string node_name(int label) {
  return label == kGroundLabel ? "ground" : "obj_" + std::to_string(label);
}

std::string to_dot(const SupportGraph& graph) {
  std::ostringstream out;
  out << "digraph support {\n";
  for (int node : graph.nodes) out << "  \"" << node_name(node) << "\";\n";
  for (const auto& [from, to] : graph.edges)
    out << "  \"" << node_name(from) << "\" -> \"" << node_name(to) << "\";\n";
  out << "}\n";
  return out.str();
}

namespace {

json match_json(const ViewRegistration& reg) {
  json j;
  j["view_a"] = reg.view_a;
  j["view_b"] = reg.view_b;
  j["pairs"] = json::array();
  for (const auto& [a, b] : reg.match.pairs) j["pairs"].push_back({a, b});
  j["score"] = reg.match.score;
  j["yaw_rad"] = reg.guess.yaw;
  j["yaw_deg"] = reg.guess.yaw * 180.0 / M_PI;
  j["translation"] = {reg.guess.translation.x(), reg.guess.translation.y(),
                      reg.guess.translation.z()};
  if (!reg.icp.mse_history.empty()) {
    j["icp"] = {{"mse", reg.icp.mse}, {"iterations", reg.icp.iterations}};
  }
  return j;
}

}  // namespace

std::string match_to_json(const ViewRegistration& reg) {
  return match_json(reg).dump(2) + "\n";
}

std::string registrations_to_json(const std::vector<ViewRegistration>& regs) {
  json j = json::array();
  for (const auto& reg : regs) j.push_back(match_json(reg));
  return j.dump(2) + "\n";
}

std::string analyze_to_json(const AnalyzeReport& report) {
  json j;
  j["explained"] = report.explained;
  j["relaxation_level"] = report.relaxation_level;
  j["voxel_size"] = report.scene.voxel_size();
  j["objects"] = json::array();
  for (int label : report.scene.labels()) {
    const Point3 c = report.scene.object_centroid(label);
    j["objects"].push_back({{"label", node_name(label)},
                            {"voxels", report.scene.occupied_count(label)},
                            {"volume", report.scene.object_volume(label)},
                            {"centroid", {c.x(), c.y(), c.z()}}});
  }
  j["contacts"] = json::array();
  for (const auto& [a, b] : report.contacts.edges)
    j["contacts"].push_back({node_name(a), node_name(b)});
  j["support_edges"] = json::array();
  std::map<int, std::vector<std::string>> supporters;
  for (const auto& [from, to] : report.support.edges) {
    j["support_edges"].push_back({node_name(from), node_name(to)});
    supporters[to].push_back(node_name(from));
  }
  j["core_supporters"] = json::object();
  for (const auto& [obj, list] : supporters)
    j["core_supporters"][node_name(obj)] = list;
  j["registrations"] = json::array();
  for (const auto& reg : report.registrations)
    j["registrations"].push_back(match_json(reg));
  return j.dump(2) + "\n";
}

std::string forces_to_csv(const EquilibriumProblem& problem,
                          const Eigen::VectorXd& forces) {
  std::ostringstream out;
  out << "contact,a,b,point,px,py,pz,dx,dy,dz,kind,magnitude\n";
  char buf[256];
  for (int j = 0; j < static_cast<int>(problem.columns.size()); ++j) {
    const auto& col = problem.columns[j];
    const auto& region = problem.contacts[col.contact];
    const Point3 p = region.points[col.point];
    std::snprintf(buf, sizeof(buf),
                  "%d,%s,%s,%d,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%s,%.9g\n",
                  col.contact, node_name(region.a).c_str(),
                  node_name(region.b).c_str(), col.point, p.x(), p.y(), p.z(),
                  col.direction.x(), col.direction.y(), col.direction.z(),
                  col.is_normal ? "normal" : "friction",
                  j < forces.size() ? forces[j] : 0.0);
    out << buf;
  }
  return out.str();
}

std::string relations_to_json() {
  json j;
  j["relations"] = json::array();
  for (qsr::Eia r : qsr::enumerate_basic_relations()) {
    json rel;
    rel["name"] = std::string(qsr::eia_name(r));
    rel["signature"] = qsr::eia_signature(r);
    rel["converse"] = std::string(qsr::eia_name(qsr::eia_converse(r)));
    rel["symm"] = std::string(qsr::eia_name(qsr::eia_symm(r)));
    const auto repr = qsr::eia_representative(r);
    rel["representative"] = {{"a", {repr.a.lo, repr.a.hi}},
                             {"b", {repr.b.lo, repr.b.hi}}};
    j["relations"].push_back(rel);
  }
  const auto& graph = qsr::eia_neighborhood();
  j["neighborhood"] = json::object();
  j["neighborhood"]["nodes"] = json::array();
  for (qsr::Eia n : graph.nodes())
    j["neighborhood"]["nodes"].push_back(std::string(qsr::eia_name(n)));
  j["neighborhood"]["edges"] = json::array();
  for (const auto& [u, v] : graph.edges())
    j["neighborhood"]["edges"].push_back(
        {std::string(qsr::eia_name(u)), std::string(qsr::eia_name(v))});
  return j.dump(2) + "\n";
}

}  // namespace cairn
