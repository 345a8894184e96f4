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

#include "orfield/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <thread>

#include "orfield/metrics.hpp"
#include "orfield/random.hpp"

namespace orfield {
namespace {

constexpr double kRoadEps = 1e-9;

bool on_road(const SceneSpec& s, Vec2 p) {
  const double a = s.junction_offset;
  const double hw = s.road_half_width + kRoadEps;
  const bool along_x = std::abs(p.y) <= hw;
  switch (s.kind) {
    case SceneKind::kStraight:
      return along_x;
    case SceneKind::kLTurn:
      return (along_x && p.x <= a + hw) || (std::abs(p.x - a) <= hw && p.y >= -hw);
    case SceneKind::kTJunction:
      return (along_x && p.x <= a) || std::abs(p.x - a) <= hw;
    case SceneKind::kFourWay:
      return along_x || std::abs(p.x - a) <= hw;
  }
  return false;
}

std::vector<Vec2> centerline(const SceneSpec& s) {
  const double reach = 0.5 * s.extent - 1.0;
  const double a = s.junction_offset;
  switch (s.kind) {
    case SceneKind::kStraight:
    case SceneKind::kFourWay:
      return {{0.0, 0.0}, {reach, 0.0}};
    case SceneKind::kLTurn:
    case SceneKind::kTJunction:
      if (a == 0.0) return {{0.0, 0.0}, {0.0, reach}};
      return {{0.0, 0.0}, {a, 0.0}, {a, reach}};
  }
  return {};
}

std::vector<Vec2> densify(const std::vector<Vec2>& pts, double spacing) {
  std::vector<Vec2> out{pts.front()};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double len = distance(pts[i], pts[i + 1]);
    const int n = std::max(1, static_cast<int>(std::ceil(len / spacing - 1e-9)));
    for (int k = 1; k <= n; ++k) out.push_back(pts[i] + (pts[i + 1] - pts[i]) * (static_cast<double>(k) / n));
  }
  return out;
}

Vec2 vertex_direction(const std::vector<Vec2>& pts, std::size_t i) {
  const Vec2 in = i > 0 ? normalized_or_zero(pts[i] - pts[i - 1]) : Vec2{};
  const Vec2 out = i + 1 < pts.size() ? normalized_or_zero(pts[i + 1] - pts[i]) : Vec2{};
  const Vec2 avg = normalized_or_zero(in + out);
  return avg == Vec2{} ? out : avg;
}

Cell vehicle_cell(const Scene& scene) {
  const auto c = scene.occupancy.geometry().world_to_cell(scene.vehicle.position);
  if (!c) throw Error(ErrorCode::kOutOfRange, "vehicle outside the scene raster");
  return *c;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

template <typename F>
void run_case(CaseRecord& rec, F&& body) {
  try {
    body();
    rec.ok = true;
  } catch (const Error& e) {
    rec.ok = false;
    rec.error = e.what();
  }
}

void add_params_echo(ExperimentResult& r, const PlannerParams& p, const std::string& prefix) {
  r.config.emplace_back(prefix + "step_size", format_number(p.step_size));
  r.config.emplace_back(prefix + "neighbor_radius", format_number(p.neighbor_radius));
  r.config.emplace_back(prefix + "iterations", std::to_string(p.iterations));
  r.config.emplace_back(prefix + "planning_radius", format_number(p.planning_radius));
  r.config.emplace_back(prefix + "handle", format_number(p.handle));
  r.config.emplace_back(prefix + "candidate_count", std::to_string(p.candidate_count));
  r.config.emplace_back(prefix + "smoothing_radius", std::to_string(p.smoothing_radius));
  r.config.emplace_back(prefix + "sampling_margin", format_number(p.sampling_margin));
  r.config.emplace_back(prefix + "downsample", p.downsample ? "true" : "false");
  r.config.emplace_back(prefix + "goal_bias", format_number(p.goal_bias));
}

void add_scene_echo(ExperimentResult& r, const SceneSpec& s, const std::string& prefix) {
  r.config.emplace_back(prefix + "kind", std::string(to_string(s.kind)));
  r.config.emplace_back(prefix + "road_half_width", format_number(s.road_half_width));
  r.config.emplace_back(prefix + "extent", format_number(s.extent));
  r.config.emplace_back(prefix + "resolution", format_number(s.resolution));
  r.config.emplace_back(prefix + "junction_offset", format_number(s.junction_offset));
  r.config.emplace_back(prefix + "occlusions", std::to_string(s.occlusions.size()));
  r.config.emplace_back(prefix + "route_noise", format_number(s.route_noise));
  r.config.emplace_back(prefix + "rotation", format_number(s.rotation));
  r.config.emplace_back(prefix + "rng_seed", std::to_string(s.rng_seed));
}

}  // namespace

std::string_view to_string(SceneKind k) {
  switch (k) {
    case SceneKind::kStraight: return "straight";
    case SceneKind::kLTurn: return "lturn";
    case SceneKind::kTJunction: return "tjunction";
    case SceneKind::kFourWay: return "fourway";
  }
  return "unknown";
}

std::optional<SceneKind> parse_scene_kind(std::string_view name) {
  for (SceneKind k : {SceneKind::kStraight, SceneKind::kLTurn, SceneKind::kTJunction, SceneKind::kFourWay}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void SceneSpec::validate() const {
  auto bad = [](const char* msg) { throw Error(ErrorCode::kInvalidArgument, msg); };
  if (!(road_half_width > 0.0) || !std::isfinite(road_half_width)) bad("road_half_width must be positive");
  if (!(extent > 4.0 * road_half_width) || !std::isfinite(extent)) bad("extent must exceed 4 road half-widths");
  if (!(resolution > 0.0) || !std::isfinite(resolution)) bad("resolution must be positive");
  if (extent / resolution < 3.0 || extent / resolution > 8192.0) bad("extent / resolution out of range");
  if (!(junction_offset >= 0.0) || junction_offset > 0.5 * extent - road_half_width - 2.0) {
    bad("junction_offset must leave room for the turn inside the raster");
  }
  if (!(route_noise >= 0.0) || !std::isfinite(route_noise)) bad("route_noise must be >= 0");
  if (!std::isfinite(rotation)) bad("rotation must be finite");
  for (const Rect& r : occlusions) {
    if (!(r.min.x <= r.max.x && r.min.y <= r.max.y)) bad("occlusion rectangle has min > max");
  }
}

GridGeometry scene_geometry(const SceneSpec& spec) {
  spec.validate();
  const int n = static_cast<int>(std::lround(spec.extent / spec.resolution));
  const double half = static_cast<double>(n / 2) * spec.resolution;
  return GridGeometry(n, n, spec.resolution, {-half, -half});
}

Scene build_scene(const SceneSpec& spec) { return build_scene(spec, scene_geometry(spec)); }

Scene build_scene(const SceneSpec& spec, const GridGeometry& g) {
  spec.validate();
  OccupancyGrid full(g, CellState::kObstacle);
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const Cell c = g.cell_at(i);
    if (on_road(spec, g.cell_center(c))) full(c) = CellState::kFree;
  }
  OccupancyGrid observed = full;
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const Cell c = g.cell_at(i);
    const Vec2 p = g.cell_center(c);
    for (const Rect& r : spec.occlusions) {
      if (r.contains(p)) observed(c) = CellState::kUnknown;
    }
  }

  const std::vector<Vec2> center = centerline(spec);
  Rng rng(spec.rng_seed + seed_offset::kScene);
  std::vector<Vec2> waypoints = center;
  for (std::size_t i = 1; i < center.size(); ++i) {
    const double offset = rng.uniform(-spec.route_noise, spec.route_noise);
    waypoints[i] = center[i] + rotate90(vertex_direction(center, i)) * offset;
  }
  for (Vec2& w : waypoints) {
    w = rotate(w, spec.rotation);
    if (!g.contains_point(w)) throw Error(ErrorCode::kOutOfRange, "route leaves the scene raster");
  }

  const Pose vehicle{{0.0, 0.0}, 0.0};
  return {std::move(observed), std::move(full), Route(std::move(waypoints)),
          Trajectory::from_positions(densify(center, kGroundTruthSpacing), vehicle.heading), vehicle};
}

std::optional<std::size_t> nearest_frontier(const OccupancyGrid& occ, const FrontierSet& frontiers,
                                            Vec2 p, std::optional<Cell> from) {
  std::optional<DijkstraField> reach;
  if (from) reach = dijkstra_field(occ, *from);
  std::optional<std::size_t> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < frontiers.size(); ++i) {
    const Cell rep = frontiers[i].representative;
    if (reach && !std::isfinite(reach->distance(rep))) continue;
    const double d = distance(occ.geometry().cell_center(rep), p);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

OrField scene_field(const Scene& scene, FieldVariant variant) {
  FieldInputs in;
  in.route = &scene.route;
  in.geometry = scene.occupancy.geometry();
  const bool full = variant == FieldVariant::kDijkstraFull || variant == FieldVariant::kGradientFull;
  const OccupancyGrid& occ = full ? scene.full_occupancy : scene.occupancy;
  if (variant != FieldVariant::kInitialOrField && variant != FieldVariant::kNearest) {
    const FrontierSet frontiers = find_frontiers(occ, kSceneFrontierMinLength);
    const auto idx = nearest_frontier(occ, frontiers, scene.route.waypoints().back(), vehicle_cell(scene));
    if (!idx) throw Error(ErrorCode::kNoPath, "no frontier reachable from the vehicle");
    in.occupancy = &occ;
    in.target = frontiers[*idx].representative;
  }
  return make_field(variant, in);
}

Vec2 point_planner_goal(const Scene& scene, double planning_radius) {
  const Vec2 q = scene.route.point_at(std::min(planning_radius, scene.route.length()));
  const OccupancyGrid& occ = scene.occupancy;
  const DijkstraField reach = dijkstra_field(occ, vehicle_cell(scene));
  const GridGeometry& g = occ.geometry();
  std::optional<Cell> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const Cell c = g.cell_at(i);
    if (!std::isfinite(reach.distance(c))) continue;
    const double d = distance(g.cell_center(c), q);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  if (!best) throw Error(ErrorCode::kNoPath, "no reachable free cell for the goal");
  return best_d <= 0.5 * g.resolution() && g.world_to_cell(q) == best ? q : g.cell_center(*best);
}

PlanResult plan_on_scene(const Scene& scene, PlannerKind planner, const OrField* field,
                         const PlannerParams& params, bool use_occupancy) {
  if (planner == PlannerKind::kPointRrtStar) {
    return point_rrt_star(scene.occupancy, scene.vehicle, point_planner_goal(scene, params.planning_radius),
                          params);
  }
  if (field == nullptr) throw Error(ErrorCode::kInvalidArgument, "field planners need a field");
  if (planner == PlannerKind::kFieldBezier) return field_bezier(*field, scene.vehicle, params);
  return field_rrt_star(*field, use_occupancy ? &scene.occupancy : nullptr, scene.vehicle, params);
}

ExperimentResult rotation_robustness(const RotationConfig& cfg) {
  if (!(cfg.step_degrees > 0.0) || !std::isfinite(cfg.step_degrees)) {
    throw Error(ErrorCode::kInvalidArgument, "step_degrees must be positive");
  }
  const double count = 360.0 / cfg.step_degrees;
  const auto n = static_cast<std::size_t>(std::llround(count));
  if (n == 0 || std::abs(count - static_cast<double>(n)) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "360 must be a multiple of step_degrees");
  }
  cfg.scene.validate();
  cfg.params.validate();

  ExperimentResult result;
  result.harness = "rotation";
  result.config.emplace_back("planner", std::string(to_string(cfg.planner)));
  result.config.emplace_back("variant", std::string(to_string(cfg.variant)));
  result.config.emplace_back("step_degrees", format_number(cfg.step_degrees));
  result.config.emplace_back("use_occupancy", cfg.use_occupancy ? "true" : "false");
  result.config.emplace_back("seed", std::to_string(cfg.seed));
  add_scene_echo(result, cfg.scene, "scene.");
  add_params_echo(result, cfg.params, "params.");
  result.cases.resize(n);

  parallel_for(n, cfg.threads, [&](std::size_t k) {
    CaseRecord& rec = result.cases[k];
    rec.index = k;
    rec.scene = std::string(to_string(cfg.scene.kind));
    rec.variant = cfg.planner == PlannerKind::kPointRrtStar ? "none" : std::string(to_string(cfg.variant));
    rec.planner = std::string(to_string(cfg.planner));
    rec.seed = cfg.seed + k;
    rec.rotation = static_cast<double>(k) * cfg.step_degrees * kPi / 180.0;
    run_case(rec, [&] {
      SceneSpec spec = cfg.scene;
      spec.rotation = cfg.scene.rotation + rec.rotation;
      spec.rng_seed = rec.seed;
      const Scene scene = build_scene(spec);
      PlannerParams params = cfg.params;
      params.rng_seed = rec.seed + seed_offset::kPlanner;
      std::optional<OrField> field;
      if (cfg.planner != PlannerKind::kPointRrtStar) field = scene_field(scene, cfg.variant);
      const PlanResult plan =
          plan_on_scene(scene, cfg.planner, field ? &*field : nullptr, params, cfg.use_occupancy);
      rec.degraded = plan.degraded;
      rec.energy = plan.energy;
      rec.in_free_space = in_free_space_fraction(plan.trajectory, scene.full_occupancy);
      const FrontierSet frontiers = find_frontiers(scene.full_occupancy, kSceneFrontierMinLength);
      rec.commanded_branch = nearest_frontier(scene.full_occupancy, frontiers, scene.route.waypoints().back());
      rec.branch = nearest_frontier(scene.full_occupancy, frontiers, plan.trajectory.back().position);
    });
  });

  double free_sum = 0.0;
  std::size_t ok = 0;
  std::size_t correct = 0;
  std::size_t degraded = 0;
  std::map<std::size_t, std::size_t> histogram;
  for (const CaseRecord& rec : result.cases) {
    if (!rec.ok) continue;
    ++ok;
    free_sum += *rec.in_free_space;
    degraded += rec.degraded ? 1 : 0;
    if (rec.branch) ++histogram[*rec.branch];
    correct += rec.branch && rec.commanded_branch && *rec.branch == *rec.commanded_branch ? 1 : 0;
  }
  result.aggregates.emplace_back("cases", static_cast<double>(n));
  result.aggregates.emplace_back("ok_cases", static_cast<double>(ok));
  result.aggregates.emplace_back("degraded_cases", static_cast<double>(degraded));
  result.aggregates.emplace_back("mean_in_free_space",
                                 ok > 0 ? free_sum / static_cast<double>(ok)
                                        : std::numeric_limits<double>::quiet_NaN());
  result.aggregates.emplace_back("correct_branch", static_cast<double>(correct));
  for (const auto& [branch, hits] : histogram) {
    result.aggregates.emplace_back("branch_histogram." + std::to_string(branch), static_cast<double>(hits));
  }
  return result;
}

ExperimentResult ablation_sweep(const AblationConfig& cfg) {
  if (cfg.scenes.empty() || cfg.variants.empty() || cfg.planners.empty() || cfg.radii.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "ablation needs scenes, variants, planners and radii");
  }
  if (!(cfg.hit_threshold > 0.0)) throw Error(ErrorCode::kInvalidArgument, "hit threshold must be positive");
  for (const SceneSpec& s : cfg.scenes) s.validate();
  cfg.params.validate();
  const PlannerParams point_params = cfg.point_params.value_or(cfg.params);
  point_params.validate();

  struct Job {
    std::size_t scene;
    PlannerKind planner;
    std::optional<FieldVariant> variant;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < cfg.scenes.size(); ++s) {
    for (PlannerKind p : cfg.planners) {
      if (p == PlannerKind::kPointRrtStar) {
        jobs.push_back({s, p, std::nullopt});
        continue;
      }
      for (FieldVariant v : cfg.variants) jobs.push_back({s, p, v});
    }
  }

  ExperimentResult result;
  result.harness = "ablation";
  result.config.emplace_back("seed", std::to_string(cfg.seed));
  result.config.emplace_back("hit_threshold", format_number(cfg.hit_threshold));
  std::string radii;
  for (double r : cfg.radii) radii += (radii.empty() ? "" : " ") + format_number(r);
  result.config.emplace_back("radii", radii);
  result.config.emplace_back("use_occupancy", cfg.use_occupancy ? "true" : "false");
  for (std::size_t s = 0; s < cfg.scenes.size(); ++s) {
    add_scene_echo(result, cfg.scenes[s], "scene" + std::to_string(s) + ".");
  }
  add_params_echo(result, cfg.params, "params.");
  add_params_echo(result, point_params, "point_params.");

  std::vector<std::optional<Scene>> scenes(cfg.scenes.size());
  parallel_for(scenes.size(), cfg.threads, [&](std::size_t s) {
    try {
      scenes[s] = build_scene(cfg.scenes[s]);
    } catch (const Error&) {
      scenes[s].reset();
    }
  });

  result.cases.resize(jobs.size());
  parallel_for(jobs.size(), cfg.threads, [&](std::size_t i) {
    const Job& job = jobs[i];
    const SceneSpec& spec = cfg.scenes[job.scene];
    CaseRecord& rec = result.cases[i];
    rec.index = i;
    rec.scene = std::string(to_string(spec.kind));
    rec.variant = job.variant ? std::string(to_string(*job.variant)) : "none";
    rec.planner = std::string(to_string(job.planner));
    rec.rotation = spec.rotation;
    // Seeded by the scene rather than the row so every variant of a scene
    // sees the same sample sequence.
    rec.seed = cfg.seed + spec.rng_seed;
    run_case(rec, [&] {
      if (!scenes[job.scene]) build_scene(spec);  // rethrows the scene error
      const Scene& scene = *scenes[job.scene];
      PlannerParams params = job.planner == PlannerKind::kPointRrtStar ? point_params : cfg.params;
      params.rng_seed = rec.seed + seed_offset::kPlanner;
      std::optional<OrField> field;
      if (job.variant) field = scene_field(scene, *job.variant);
      const PlanResult plan = plan_on_scene(scene, job.planner, field ? &*field : nullptr, params, cfg.use_occupancy);
      rec.degraded = plan.degraded;
      rec.energy = plan.energy;
      rec.in_free_space = in_free_space_fraction(plan.trajectory, scene.full_occupancy);
      const FrameMetrics m = evaluate_frame(plan.trajectory, scene.ground_truth, cfg.radii, cfg.hit_threshold);
      rec.matched = m.matched;
      rec.ade = m.ade;
      rec.fde = m.fde;
      rec.hit = m.hit;
      rec.coverage = m.coverage;
    });
  });

  struct Sums {
    std::size_t n = 0;
    double ade = 0.0, fde = 0.0, hit = 0.0, coverage = 0.0;
  };
  std::vector<std::pair<std::string, Sums>> groups;
  for (const CaseRecord& rec : result.cases) {
    const std::string key = rec.planner + "/" + rec.variant;
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == key; });
    if (it == groups.end()) {
      groups.emplace_back(key, Sums{});
      it = groups.end() - 1;
    }
    if (!rec.ok || !rec.ade) continue;
    Sums& s = it->second;
    ++s.n;
    s.ade += *rec.ade;
    s.fde += *rec.fde;
    s.hit += *rec.hit;
    s.coverage += *rec.coverage;
  }
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [key, s] : groups) {
    const double n = static_cast<double>(s.n);
    result.aggregates.emplace_back(key + "/cases", n);
    result.aggregates.emplace_back(key + "/ade", s.n ? s.ade / n : kNaN);
    result.aggregates.emplace_back(key + "/fde", s.n ? s.fde / n : kNaN);
    result.aggregates.emplace_back(key + "/hit_rate", s.n ? s.hit / n : kNaN);
    result.aggregates.emplace_back(key + "/coverage", s.n ? s.coverage / n : kNaN);
  }
  return result;
}

SceneSpec occluded_lturn_spec(std::uint64_t seed) {
  SceneSpec s;
  s.kind = SceneKind::kLTurn;
  s.extent = 64.0;
  s.road_half_width = 3.0;
  s.junction_offset = 6.0;
  s.route_noise = 0.5;
  s.rng_seed = seed;
  const double a = s.junction_offset;
  const double hw = s.road_half_width;
  // Shadow of a vehicle parked in the far half of the junction.
  s.occlusions.push_back({{a + 1.0, -hw - 1.0}, {a + hw + 1.0, 1.0}});
  return s;
}

AblationConfig lturn_ablation_config(std::size_t scene_count) {
  AblationConfig cfg;
  for (std::size_t k = 0; k < scene_count; ++k) cfg.scenes.push_back(occluded_lturn_spec(k));
  cfg.variants = {FieldVariant::kDijkstra, FieldVariant::kGradient, FieldVariant::kGradientFull};
  cfg.planners = {PlannerKind::kFieldRrtStar, PlannerKind::kPointRrtStar};
  for (int r = 1; r <= 20; ++r) cfg.radii.push_back(r);
  // Long enough that leaves past the corner still reach the 20 m circle.
  cfg.params.planning_radius = 24.0;
  cfg.params.handle = 0.3 * cfg.params.planning_radius;
  PlannerParams point = cfg.params;
  point.iterations = 4000;
  point.goal_bias = 0.1;
  cfg.point_params = point;
  cfg.use_occupancy = true;
  return cfg;
}

}  // namespace orfield
