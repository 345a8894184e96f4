// Copyright 2026 The OrField Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Synthetic road scenes and the experiment harnesses built on them.
//
// Scenes are vehicle-centric: the vehicle sits at the world origin heading
// +x, and the raster is centered on it. Roads are axis-aligned corridors of
// Free cells in an Obstacle background:
//
//   Straight    the x axis.
//   LTurn       the x axis up to the junction, then a left arm going +y.
//   TJunction   the x axis ending in a full-height road at the junction.
//   FourWay     two full roads crossing at the junction.
//
// The junction sits junction_offset meters ahead of the vehicle. The route
// follows the commanded centerline (always a left turn where there is a
// choice) to one meter inside the raster border; it is perturbed laterally
// and rotated about the vehicle. The reference trajectory is the plain
// centerline.

#ifndef ORFIELD_SCENARIOS_HPP_
#define ORFIELD_SCENARIOS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orfield/fields.hpp"
#include "orfield/geometry.hpp"
#include "orfield/grid.hpp"
#include "orfield/planners.hpp"
#include "orfield/trajectory.hpp"

namespace orfield {

enum class SceneKind { kStraight, kLTurn, kTJunction, kFourWay };

// straight, lturn, tjunction, fourway.
std::string_view to_string(SceneKind k);
std::optional<SceneKind> parse_scene_kind(std::string_view name);

struct Rect {
  Vec2 min;
  Vec2 max;

  bool contains(Vec2 p) const { return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct SceneSpec {
  SceneKind kind = SceneKind::kStraight;
  double road_half_width = 3.0;  // meters
  double extent = 48.0;          // raster side, meters
  double resolution = 0.2;       // meters per cell
  double junction_offset = 8.0;  // meters ahead of the vehicle
  std::vector<Rect> occlusions;  // forced to Unknown
  double route_noise = 0.0;      // max lateral waypoint offset, meters
  double rotation = 0.0;         // radians, about the vehicle
  std::uint64_t rng_seed = 0;

  void validate() const;
  friend bool operator==(const SceneSpec&, const SceneSpec&) = default;
};

// Square raster of side `extent` whose central cell is centered on the
// vehicle.
GridGeometry scene_geometry(const SceneSpec& spec);

struct Scene {
  OccupancyGrid occupancy;       // with occlusions
  OccupancyGrid full_occupancy;  // occlusions removed
  Route route;
  Trajectory ground_truth;
  Pose vehicle;
};

// Throws kOutOfRange when the perturbed, rotated route leaves the raster.
Scene build_scene(const SceneSpec& spec, const GridGeometry& g);
Scene build_scene(const SceneSpec& spec);

inline constexpr int kSceneFrontierMinLength = 3;
inline constexpr double kGroundTruthSpacing = 0.5;

// Index of the frontier whose representative is nearest p. With `from`, only
// frontiers reachable from that cell over Free space qualify. Ties go to the
// lower index.
std::optional<std::size_t> nearest_frontier(const OccupancyGrid& occ, const FrontierSet& frontiers,
                                            Vec2 p, std::optional<Cell> from = std::nullopt);

// Field of the given variant for a scene. Occupancy variants target the
// frontier nearest the route end that is reachable from the vehicle; the Full
// variants use the occlusion-free grid.
OrField scene_field(const Scene& scene, FieldVariant variant);

// Goal for the point planner: the route point planning_radius along the
// route, moved to the nearest Free cell reachable from the vehicle.
Vec2 point_planner_goal(const Scene& scene, double planning_radius);

// Runs one planner on a scene. Field planners ignore occupancy unless
// use_occupancy is set; the point planner always plans on the observed grid.
PlanResult plan_on_scene(const Scene& scene, PlannerKind planner, const OrField* field,
                         const PlannerParams& params, bool use_occupancy);

struct CaseRecord {
  std::size_t index = 0;
  std::string scene;
  std::string variant;  // "none" for the point planner
  std::string planner;
  double rotation = 0.0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  bool degraded = false;
  double energy = 0.0;
  std::size_t matched = 0;
  std::optional<double> ade;
  std::optional<double> fde;
  std::optional<int> hit;
  std::optional<double> coverage;
  std::optional<double> in_free_space;
  std::optional<std::size_t> commanded_branch;
  std::optional<std::size_t> branch;
};

struct ExperimentResult {
  std::string harness;
  std::vector<std::pair<std::string, std::string>> config;  // flat echo
  std::vector<CaseRecord> cases;
  std::vector<std::pair<std::string, double>> aggregates;
};

// Crossing centered on the vehicle.
inline SceneSpec fourway_spec() {
  SceneSpec s;
  s.kind = SceneKind::kFourWay;
  s.junction_offset = 0.0;
  return s;
}

struct RotationConfig {
  SceneSpec scene = fourway_spec();
  PlannerKind planner = PlannerKind::kFieldRrtStar;
  FieldVariant variant = FieldVariant::kGradientFull;
  double step_degrees = 6.0;
  PlannerParams params;
  bool use_occupancy = false;
  std::uint64_t seed = 0;
  int threads = 1;
};

// One case per rotation k * step_degrees in [0, 360). Requires 360 to be a
// multiple of step_degrees.
ExperimentResult rotation_robustness(const RotationConfig& cfg);

struct AblationConfig {
  std::vector<SceneSpec> scenes;
  std::vector<FieldVariant> variants;
  std::vector<PlannerKind> planners;
  std::vector<double> radii;
  double hit_threshold = 2.0;  // meters
  PlannerParams params;
  // Parameters for the point planner; `params` when absent.
  std::optional<PlannerParams> point_params;
  bool use_occupancy = false;
  std::uint64_t seed = 0;
  int threads = 1;
};

// One row per (scene, planner, variant); the point planner ignores the field
// and gets a single row per scene.
ExperimentResult ablation_sweep(const AblationConfig& cfg);

// Left turn with a shadowed patch in the far half of the junction and a
// noisy route.
SceneSpec occluded_lturn_spec(std::uint64_t seed);

// Field variants Dijkstra, Gradient and GradientFull under Field-RRT* plus the
// point planner on `scene_count` occluded left turns (seeds 0..n-1), scored
// at 1 m radii up to 20 m with the observed grid enforced.
AblationConfig lturn_ablation_config(std::size_t scene_count = 10);

}  // namespace orfield

#endif  // ORFIELD_SCENARIOS_HPP_
