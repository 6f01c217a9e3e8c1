#pragma once

#include "cairn/io/scene_file.hpp"
#include "cairn/matching/match.hpp"
#include "cairn/registration/icp.hpp"
#include "cairn/stability/equilibrium.hpp"
#include "cairn/voxel/complete.hpp"

namespace cairn {

struct PipelineOptions {
  // <= 0 picks the scene-file value (or its default)
  double voxel_size = -1.0;
  double mu = -1.0;
  double density = -1.0;
  RemovalMode removal = RemovalMode::one_sided;
  IcpConfig icp;
};

struct ViewRegistration {
  std::string view_a, view_b;
  MatchResult match;
  InitialGuess guess;
  RegistrationResult icp;
};

struct AnalyzeReport {
  std::vector<ViewRegistration> registrations;
  VoxelScene scene;
  ContactGraph contacts;
  std::vector<ContactRegion> regions;
  EquilibriumProblem problem;
  StabilityResult equilibrium;
  // 0 = stable as observed, 1 = degenerate contacts grown, 2 = friction
  // raised once, 3 = not explained
  int relaxation_level = 0;
  bool explained = false;
  SupportGraph support;
};

/// Full pipeline: match and register the views against the first one, carve
/// and complete the octree scene, extract contacts, test static equilibrium
/// (with the documented relaxation ladder) and derive the support graph.
AnalyzeReport analyze_scene(const SceneFile& scene, const PipelineOptions& opts = {});

/// Match + initial transform between two views of a scene.
ViewRegistration match_views(const LabeledPointCloud& a, const LabeledPointCloud& b,
                             bool run_icp = false, const IcpConfig& cfg = {});

std::string node_name(int label);
std::string to_dot(const SupportGraph& graph);
std::string match_to_json(const ViewRegistration& reg);
std::string analyze_to_json(const AnalyzeReport& report);
std::string registrations_to_json(const std::vector<ViewRegistration>& regs);
std::string forces_to_csv(const EquilibriumProblem& problem,
                          const Eigen::VectorXd& forces);

/// EIA relation tables and the empirical neighborhood graph as JSON (names,
/// signatures, converse/mirror maps, edges).
std::string relations_to_json();

}  // namespace cairn
