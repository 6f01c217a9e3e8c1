// Command-line pipeline driver: synthetic scene generation, cross-view object
// matching, registration, and support-graph extraction.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "cairn/io/pipeline.hpp"
#include "cairn/io/scenario.hpp"

namespace fs = std::filesystem;

namespace {

void write_or_print(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw cairn::Error("cannot write " + out);
  f << text;
}

int run(int argc, char** argv) {
  CLI::App app{"support-relation analysis for multi-view stacked-object scenes"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic scene");
  std::uint64_t seed = 0;
  int boxes = 3, views = 2;
  double noise = 0.0;
  bool no_occlusion = false;
  std::string scenario_file, gen_out = "scene";
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--boxes", boxes, "number of boxes (preset scenario)");
  gen->add_option("--views", views, "number of views (preset scenario)");
  gen->add_option("--noise", noise, "noise sigma relative to mean box edge");
  gen->add_flag("--no-occlusion", no_occlusion, "disable inter-object occlusion");
  gen->add_option("--scenario", scenario_file, "scenario JSON (overrides preset)");
  gen->add_option("--out", gen_out, "output scene directory")->required();

  // match
  auto* match = app.add_subcommand("match", "match objects between two views");
  std::string match_scene, view_a = "view_0", view_b = "view_1", match_out;
  match->add_option("scene", match_scene, "scene directory or header")->required();
  match->add_option("--view-a", view_a, "first view id");
  match->add_option("--view-b", view_b, "second view id");
  match->add_option("--out", match_out, "output JSON file (default stdout)");

  // register
  auto* reg = app.add_subcommand("register", "register all views onto the first");
  std::string reg_scene, reg_out, fused_out;
  reg->add_option("scene", reg_scene, "scene directory or header")->required();
  reg->add_option("--out", reg_out, "registration report JSON (default stdout)");
  reg->add_option("--fused", fused_out, "write the fused labeled cloud (xyz)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "extract the support graph");
  std::string an_scene, an_out, an_format = "dot", forces_csv;
  double voxel_size = -1.0, mu = -1.0, density = -1.0;
  bool full_removal = false;
  analyze->add_option("scene", an_scene, "scene directory or header")->required();
  analyze->add_option("--format", an_format, "output format: dot|json")
      ->check(CLI::IsMember({"dot", "json"}));
  analyze->add_option("--out", an_out, "output file (default stdout)");
  analyze->add_option("--voxel-size", voxel_size, "voxel size in meters");
  analyze->add_option("--mu", mu, "friction coefficient");
  analyze->add_option("--density", density, "object density kg/m^3");
  analyze->add_option("--dump-forces", forces_csv, "write force certificate CSV");
  analyze->add_flag("--full-removal", full_removal,
                    "remove whole contacts in the core-supporter test");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    cairn::ScenarioSpec spec;
    if (!scenario_file.empty()) {
      spec = cairn::scenario_from_json_file(scenario_file);
      spec.seed = seed;
    } else {
      spec = cairn::random_stack_scenario(seed, boxes, views, noise, !no_occlusion);
    }
    const cairn::SceneFile scene = cairn::generate_scene(spec);
    cairn::write_scene(scene, gen_out);
    std::size_t total = 0;
    for (const auto& v : scene.views)
      for (const auto& r : v.regions) total += r.points.size();
    std::cout << "wrote " << scene.views.size() << " views, " << total
              << " points to " << gen_out << "\n";
    return 0;
  }

  if (match->parsed()) {
    const cairn::SceneFile scene = cairn::read_scene(match_scene);
    const cairn::LabeledPointCloud* a = nullptr;
    const cairn::LabeledPointCloud* b = nullptr;
    for (const auto& v : scene.views) {
      if (v.view_id == view_a) a = &v;
      if (v.view_id == view_b) b = &v;
    }
    if (!a || !b) throw cairn::ParseError("view id not found in scene");
    write_or_print(cairn::match_to_json(cairn::match_views(*a, *b)), match_out);
    return 0;
  }

  if (reg->parsed()) {
    const cairn::SceneFile scene = cairn::read_scene(reg_scene);
    if (scene.views.size() < 2)
      throw cairn::ParseError("register needs at least two views");
    std::vector<cairn::ViewRegistration> regs;
    std::vector<cairn::RigidTransform> transforms;
    for (std::size_t v = 1; v < scene.views.size(); ++v) {
      regs.push_back(
          cairn::match_views(scene.views.front(), scene.views[v], true));
      transforms.push_back(regs.back().icp.transform);
    }
    write_or_print(cairn::registrations_to_json(regs), reg_out);
    if (!fused_out.empty()) {
      std::vector<std::map<int, int>> maps;
      for (const auto& r : regs) {
        std::map<int, int> m;
        for (const auto& [la, lb] : r.match.pairs) m[lb] = la;
        maps.push_back(std::move(m));
      }
      cairn::write_xyz(cairn::fuse_views(scene.views, transforms, maps), fused_out);
    }
    return 0;
  }

  // analyze
  const cairn::SceneFile scene = cairn::read_scene(an_scene);
  cairn::PipelineOptions opts;
  opts.voxel_size = voxel_size;
  opts.mu = mu;
  opts.density = density;
  opts.removal = full_removal ? cairn::RemovalMode::full_contact
                              : cairn::RemovalMode::one_sided;
  const cairn::AnalyzeReport report = cairn::analyze_scene(scene, opts);
  write_or_print(an_format == "dot" ? cairn::to_dot(report.support)
                                    : cairn::analyze_to_json(report),
                 an_out);
  if (!forces_csv.empty() && report.explained)
    write_or_print(cairn::forces_to_csv(report.problem, report.equilibrium.forces),
                   forces_csv);
  if (!report.explained) {
    std::cerr << "scene not explained: no static-equilibrium solution "
                 "(relaxation exhausted)\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cairn::SceneNotExplained& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cairn::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const cairn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
