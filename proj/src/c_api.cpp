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

#include "orfield/orfield.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <utility>

#include "json.hpp"
#include "orfield/fields.hpp"
#include "orfield/io.hpp"
#include "orfield/metrics.hpp"
#include "orfield/planners.hpp"
#include "orfield/random.hpp"
#include "orfield/render.hpp"
#include "orfield/scenarios.hpp"

struct orf_occupancy {
  orfield::OccupancyGrid value;
};
struct orf_field {
  orfield::OrField value;
};
struct orf_scalar_grid {
  orfield::ScalarGrid value;
};
struct orf_route {
  orfield::Route value;
};
struct orf_trajectory {
  orfield::Trajectory value;
};
struct orf_scene {
  orfield::SceneSpec spec;
  orfield::Scene value;
};
struct orf_plan {
  orfield::PlannerKind planner;
  orfield::PlannerParams params;
  orfield::PlanResult value;
};

namespace {

using orfield::Error;
using orfield::ErrorCode;

thread_local std::string g_last_error;

orf_status fail(orf_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

orf_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return ORF_INVALID_ARGUMENT;
    case ErrorCode::kOutOfRange: return ORF_OUT_OF_RANGE;
    case ErrorCode::kDegenerate: return ORF_DEGENERATE;
    case ErrorCode::kGeometryMismatch: return ORF_GEOMETRY_MISMATCH;
    case ErrorCode::kNoPath: return ORF_NO_PATH;
    case ErrorCode::kParse: return ORF_PARSE_ERROR;
    case ErrorCode::kIo: return ORF_IO_ERROR;
  }
  return ORF_INTERNAL_ERROR;
}

// Runs body and converts exceptions to status codes.
template <typename F>
orf_status guard(F&& body) {
  try {
    body();
    return ORF_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ORF_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(ORF_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(ORF_INTERNAL_ERROR, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

orfield::GridGeometry to_geometry(const orf_geometry& g) {
  return orfield::GridGeometry(g.width, g.height, g.resolution, {g.origin_x, g.origin_y});
}

orf_geometry from_geometry(const orfield::GridGeometry& g) {
  return {g.width(), g.height(), g.resolution(), g.origin().x, g.origin().y};
}

void require_capacity(size_t capacity, size_t needed) {
  if (capacity < needed) throw Error(ErrorCode::kOutOfRange, "output buffer too small");
}

template <typename Handle, typename T>
Handle* make_handle(T&& value) {
  return new Handle{std::forward<T>(value)};
}

orfield::FrontierSet frontiers_of(const orf_occupancy* occ, int32_t min_length) {
  require(occ != nullptr, "occupancy is null");
  require(min_length >= 1, "min_length must be >= 1");
  return orfield::find_frontiers(occ->value, min_length);
}

}  // namespace

extern "C" {

const char* orf_version(void) { return "0.1.0"; }

const char* orf_status_name(orf_status status) {
  switch (status) {
    case ORF_OK: return "ok";
    case ORF_INVALID_ARGUMENT: return "invalid argument";
    case ORF_OUT_OF_RANGE: return "out of range";
    case ORF_DEGENERATE: return "degenerate input";
    case ORF_GEOMETRY_MISMATCH: return "geometry mismatch";
    case ORF_NO_PATH: return "no path";
    case ORF_PARSE_ERROR: return "parse error";
    case ORF_IO_ERROR: return "i/o error";
    case ORF_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

const char* orf_last_error(void) { return g_last_error.c_str(); }

void orf_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------------------
// Occupancy

orf_status orf_occupancy_create(const orf_geometry* geometry, const uint8_t* states, orf_occupancy** out) {
  return guard([&] {
    require(geometry && states && out, "null argument");
    const orfield::GridGeometry g = to_geometry(*geometry);
    std::vector<orfield::CellState> v(g.cell_count());
    for (size_t i = 0; i < v.size(); ++i) {
      require(states[i] <= ORF_CELL_UNKNOWN, "cell state must be 0, 1 or 2");
      v[i] = static_cast<orfield::CellState>(states[i]);
    }
    *out = make_handle<orf_occupancy>(orfield::OccupancyGrid(g, std::move(v)));
  });
}

orf_status orf_occupancy_load(const char* path, orf_occupancy** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = make_handle<orf_occupancy>(orfield::decode_occupancy(orfield::read_file(path)));
  });
}

orf_status orf_occupancy_save(const orf_occupancy* occ, const char* path) {
  return guard([&] {
    require(occ && path, "null argument");
    orfield::write_file(path, orfield::encode_grid(occ->value));
  });
}

orf_status orf_occupancy_geometry(const orf_occupancy* occ, orf_geometry* out) {
  return guard([&] {
    require(occ && out, "null argument");
    *out = from_geometry(occ->value.geometry());
  });
}

orf_status orf_occupancy_states(const orf_occupancy* occ, uint8_t* out, size_t capacity) {
  return guard([&] {
    require(occ && out, "null argument");
    const auto v = occ->value.values();
    require_capacity(capacity, v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = static_cast<uint8_t>(v[i]);
  });
}

void orf_occupancy_free(orf_occupancy* occ) { delete occ; }

orf_status orf_frontier_count(const orf_occupancy* occ, int32_t min_length, size_t* out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    *out = frontiers_of(occ, min_length).size();
  });
}

orf_status orf_frontier_representative(const orf_occupancy* occ, int32_t min_length, size_t index,
                                       int32_t* col, int32_t* row) {
  return guard([&] {
    require(col && row, "null argument");
    const auto f = frontiers_of(occ, min_length);
    if (index >= f.size()) {
      throw Error(ErrorCode::kOutOfRange, "frontier index " + std::to_string(index) + " out of range (" +
                                              std::to_string(f.size()) + " frontiers)");
    }
    *col = f[index].representative.col;
    *row = f[index].representative.row;
  });
}

// ---------------------------------------------------------------------------
// Routes and trajectories

orf_status orf_route_create(const double* xy, size_t count, orf_route** out) {
  return guard([&] {
    require(xy && out, "null argument");
    std::vector<orfield::Vec2> pts(count);
    for (size_t i = 0; i < count; ++i) pts[i] = {xy[2 * i], xy[2 * i + 1]};
    *out = make_handle<orf_route>(orfield::Route(std::move(pts)));
  });
}

orf_status orf_route_load(const char* path, orf_route** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = make_handle<orf_route>(orfield::route_from_json(orfield::read_file(path)));
  });
}

orf_status orf_route_save(const orf_route* route, const char* path) {
  return guard([&] {
    require(route && path, "null argument");
    orfield::write_file(path, orfield::route_to_json(route->value));
  });
}

orf_status orf_route_size(const orf_route* route, size_t* out) {
  return guard([&] {
    require(route && out, "null argument");
    *out = route->value.size();
  });
}

orf_status orf_route_waypoints(const orf_route* route, double* xy, size_t capacity) {
  return guard([&] {
    require(route && xy, "null argument");
    const auto& w = route->value.waypoints();
    require_capacity(capacity, 2 * w.size());
    for (size_t i = 0; i < w.size(); ++i) {
      xy[2 * i] = w[i].x;
      xy[2 * i + 1] = w[i].y;
    }
  });
}

void orf_route_free(orf_route* route) { delete route; }

orf_status orf_trajectory_create(const orf_pose* poses, size_t count, orf_trajectory** out) {
  return guard([&] {
    require(poses && out, "null argument");
    std::vector<orfield::Pose> v(count);
    for (size_t i = 0; i < count; ++i) v[i] = {{poses[i].x, poses[i].y}, poses[i].heading};
    *out = make_handle<orf_trajectory>(orfield::Trajectory(std::move(v)));
  });
}

orf_status orf_trajectory_load(const char* path, orf_trajectory** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = make_handle<orf_trajectory>(orfield::trajectory_from_json(orfield::read_file(path)));
  });
}

orf_status orf_trajectory_save(const orf_trajectory* traj, const char* path) {
  return guard([&] {
    require(traj && path, "null argument");
    orfield::write_file(path, orfield::trajectory_to_json(traj->value));
  });
}

orf_status orf_trajectory_size(const orf_trajectory* traj, size_t* out) {
  return guard([&] {
    require(traj && out, "null argument");
    *out = traj->value.size();
  });
}

orf_status orf_trajectory_poses(const orf_trajectory* traj, orf_pose* out, size_t capacity) {
  return guard([&] {
    require(traj && out, "null argument");
    const auto& p = traj->value.poses();
    require_capacity(capacity, p.size());
    for (size_t i = 0; i < p.size(); ++i) out[i] = {p[i].position.x, p[i].position.y, p[i].heading};
  });
}

void orf_trajectory_free(orf_trajectory* traj) { delete traj; }

// ---------------------------------------------------------------------------
// Fields

orf_status orf_field_create(const orf_geometry* geometry, const double* xy, orf_field** out) {
  return guard([&] {
    require(geometry && xy && out, "null argument");
    const orfield::GridGeometry g = to_geometry(*geometry);
    std::vector<orfield::Vec2> v(g.cell_count());
    for (size_t i = 0; i < v.size(); ++i) {
      v[i] = {xy[2 * i], xy[2 * i + 1]};
      require(v[i].norm() <= 1.0 + 1e-9, "field vectors must have norm <= 1");
    }
    *out = make_handle<orf_field>(orfield::OrField(g, std::move(v)));
  });
}

orf_status orf_field_load(const char* path, orf_field** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = make_handle<orf_field>(orfield::decode_orfield(orfield::read_file(path)));
  });
}

orf_status orf_field_save(const orf_field* field, const char* path) {
  return guard([&] {
    require(field && path, "null argument");
    orfield::write_file(path, orfield::encode_grid(field->value));
  });
}

orf_status orf_field_geometry(const orf_field* field, orf_geometry* out) {
  return guard([&] {
    require(field && out, "null argument");
    *out = from_geometry(field->value.geometry());
  });
}

orf_status orf_field_values(const orf_field* field, double* xy, size_t capacity) {
  return guard([&] {
    require(field && xy, "null argument");
    const auto v = field->value.values();
    require_capacity(capacity, 2 * v.size());
    for (size_t i = 0; i < v.size(); ++i) {
      xy[2 * i] = v[i].x;
      xy[2 * i + 1] = v[i].y;
    }
  });
}

void orf_field_free(orf_field* field) { delete field; }

orf_status orf_field_build(const char* variant, const orf_occupancy* occ, const orf_route* route,
                           const orf_geometry* geometry, int64_t target_frontier, int32_t min_length,
                           orf_field** out_field, orf_scalar_grid** out_distance) {
  return guard([&] {
    require(variant && out_field, "null argument");
    const auto v = orfield::parse_field_variant(variant);
    if (!v) throw Error(ErrorCode::kInvalidArgument, std::string("unknown field variant '") + variant + "'");
    orfield::FieldInputs in;
    in.occupancy = occ ? &occ->value : nullptr;
    in.route = route ? &route->value : nullptr;
    if (geometry) in.geometry = to_geometry(*geometry);
    if (occ && geometry && !(to_geometry(*geometry) == occ->value.geometry())) {
      throw Error(ErrorCode::kGeometryMismatch, "geometry differs from the occupancy grid");
    }
    const bool needs_target = *v == orfield::FieldVariant::kDijkstra || *v == orfield::FieldVariant::kGradient ||
                              *v == orfield::FieldVariant::kDijkstraFull ||
                              *v == orfield::FieldVariant::kGradientFull;
    if (needs_target) {
      require(occ != nullptr, "this field variant requires an occupancy grid");
      require(target_frontier >= 0, "this field variant requires a target frontier index");
      const auto f = frontiers_of(occ, min_length);
      if (static_cast<uint64_t>(target_frontier) >= f.size()) {
        throw Error(ErrorCode::kOutOfRange, "target frontier " + std::to_string(target_frontier) +
                                                " out of range (" + std::to_string(f.size()) + " frontiers)");
      }
      in.target = f[static_cast<size_t>(target_frontier)].representative;
    }
    if (*v == orfield::FieldVariant::kInitialOrField) {
      require(route != nullptr, "initial field requires a route");
      require(occ != nullptr || geometry != nullptr, "initial field requires a grid geometry");
      const orfield::GridGeometry g = occ ? occ->value.geometry() : to_geometry(*geometry);
      orfield::InitialField f = orfield::initial_orfield(route->value, g);
      orf_scalar_grid* dist = out_distance ? make_handle<orf_scalar_grid>(std::move(f.distance)) : nullptr;
      *out_field = make_handle<orf_field>(std::move(f.orientation));
      if (out_distance) *out_distance = dist;
      return;
    }
    *out_field = make_handle<orf_field>(orfield::make_field(*v, in));
    if (out_distance) *out_distance = nullptr;
  });
}

orf_status orf_scalar_grid_save(const orf_scalar_grid* grid, const char* path) {
  return guard([&] {
    require(grid && path, "null argument");
    orfield::write_file(path, orfield::encode_grid(grid->value));
  });
}

orf_status orf_scalar_grid_geometry(const orf_scalar_grid* grid, orf_geometry* out) {
  return guard([&] {
    require(grid && out, "null argument");
    *out = from_geometry(grid->value.geometry());
  });
}

orf_status orf_scalar_grid_values(const orf_scalar_grid* grid, double* out, size_t capacity) {
  return guard([&] {
    require(grid && out, "null argument");
    const auto v = grid->value.values();
    require_capacity(capacity, v.size());
    std::copy(v.begin(), v.end(), out);
  });
}

void orf_scalar_grid_free(orf_scalar_grid* grid) { delete grid; }

// ---------------------------------------------------------------------------
// Scenes

orf_status orf_scene_build(const char* spec_json, const uint64_t* seed, orf_scene** out) {
  return guard([&] {
    require(spec_json && out, "null argument");
    orfield::SceneSpec spec = orfield::scene_spec_from_json(spec_json);
    if (seed) spec.rng_seed = *seed;
    orfield::Scene scene = orfield::build_scene(spec);
    *out = new orf_scene{std::move(spec), std::move(scene)};
  });
}

orf_status orf_scene_occupancy(const orf_scene* scene, int full, orf_occupancy** out) {
  return guard([&] {
    require(scene && out, "null argument");
    *out = make_handle<orf_occupancy>(full ? scene->value.full_occupancy : scene->value.occupancy);
  });
}

orf_status orf_scene_route(const orf_scene* scene, orf_route** out) {
  return guard([&] {
    require(scene && out, "null argument");
    *out = make_handle<orf_route>(scene->value.route);
  });
}

orf_status orf_scene_ground_truth(const orf_scene* scene, orf_trajectory** out) {
  return guard([&] {
    require(scene && out, "null argument");
    *out = make_handle<orf_trajectory>(scene->value.ground_truth);
  });
}

orf_status orf_scene_field(const orf_scene* scene, const char* variant, orf_field** out) {
  return guard([&] {
    require(scene && variant && out, "null argument");
    const auto v = orfield::parse_field_variant(variant);
    if (!v) throw Error(ErrorCode::kInvalidArgument, std::string("unknown field variant '") + variant + "'");
    *out = make_handle<orf_field>(orfield::scene_field(scene->value, *v));
  });
}

orf_status orf_scene_spec_json(const orf_scene* scene, char** out) {
  return guard([&] {
    require(scene && out, "null argument");
    *out = copy_string(orfield::scene_spec_to_json(scene->spec));
  });
}

void orf_scene_free(orf_scene* scene) { delete scene; }

// ---------------------------------------------------------------------------
// Planning

orf_status orf_plan_run(const char* planner, const orf_field* field, const orf_occupancy* occ,
                        const char* params_json, const uint64_t* seed, orf_pose start, const double* goal_xy,
                        orf_plan** out) {
  return guard([&] {
    require(planner && out, "null argument");
    const auto kind = orfield::parse_planner(planner);
    if (!kind) throw Error(ErrorCode::kInvalidArgument, std::string("unknown planner '") + planner + "'");
    orfield::PlannerParams params = params_json ? orfield::params_from_json(params_json) : orfield::PlannerParams{};
    // A run seed feeds the planner through its own named stream.
    if (seed) params.rng_seed = *seed + orfield::seed_offset::kPlanner;
    const orfield::Pose s{{start.x, start.y}, start.heading};
    std::optional<orfield::PlanResult> result;
    switch (*kind) {
      case orfield::PlannerKind::kFieldRrtStar:
        require(field != nullptr, "field-rrt requires a field");
        if (occ && !(occ->value.geometry() == field->value.geometry())) {
          throw Error(ErrorCode::kGeometryMismatch, "occupancy and field geometries differ");
        }
        result = orfield::field_rrt_star(field->value, occ ? &occ->value : nullptr, s, params);
        break;
      case orfield::PlannerKind::kFieldBezier:
        require(field != nullptr, "field-bezier requires a field");
        result = orfield::field_bezier(field->value, s, params);
        break;
      case orfield::PlannerKind::kPointRrtStar:
        require(occ != nullptr, "point-rrt requires an occupancy grid");
        require(goal_xy != nullptr, "point-rrt requires a goal");
        result = orfield::point_rrt_star(occ->value, s, {goal_xy[0], goal_xy[1]}, params);
        break;
    }
    *out = new orf_plan{*kind, params, std::move(*result)};
  });
}

orf_status orf_plan_trajectory(const orf_plan* plan, orf_trajectory** out) {
  return guard([&] {
    require(plan && out, "null argument");
    *out = make_handle<orf_trajectory>(plan->value.trajectory);
  });
}

orf_status orf_plan_degraded(const orf_plan* plan, int* out) {
  return guard([&] {
    require(plan && out, "null argument");
    *out = plan->value.degraded ? 1 : 0;
  });
}

orf_status orf_plan_report_json(const orf_plan* plan, char** out) {
  return guard([&] {
    require(plan && out, "null argument");
    nlohmann::ordered_json j;
    j["planner"] = std::string(orfield::to_string(plan->planner));
    j["params"] = nlohmann::ordered_json::parse(orfield::params_to_json(plan->params));
    j["iterations"] = plan->value.iterations;
    j["energy"] = plan->value.energy;
    j["node_count"] = plan->value.node_count;
    j["eligible_leaves"] = plan->value.eligible_leaves;
    j["degraded"] = plan->value.degraded;
    j["poses"] = plan->value.trajectory.size();
    j["length"] = plan->value.trajectory.length();
    *out = copy_string(j.dump(2) + "\n");
  });
}

void orf_plan_free(orf_plan* plan) { delete plan; }

// ---------------------------------------------------------------------------
// Evaluation, experiments, rendering

orf_status orf_evaluate(const orf_trajectory* planned, const orf_trajectory* truth, const double* radii,
                        size_t radius_count, double hit_threshold, const char* format, char** out_report) {
  return guard([&] {
    require(planned && truth && format && out_report, "null argument");
    require(radii != nullptr || radius_count == 0, "null radii");
    require(radius_count > 0, "at least one radius is required");
    const std::string fmt = format;
    require(fmt == "json" || fmt == "csv", "format must be json or csv");
    orfield::EvalReport report;
    report.radii.assign(radii, radii + radius_count);
    report.hit_threshold = hit_threshold;
    report.frames.push_back(orfield::evaluate_frame(planned->value, truth->value, report.radii, hit_threshold));
    *out_report = copy_string(fmt == "json" ? orfield::eval_report_to_json(report)
                                            : orfield::eval_report_to_csv(report));
  });
}

orf_status orf_experiment_run(const char* harness, const char* config_json, const uint64_t* seed,
                              int32_t threads, const char* format, char** out_result) {
  return guard([&] {
    require(harness && format && out_result, "null argument");
    const std::string fmt = format;
    require(fmt == "json" || fmt == "csv", "format must be json or csv");
    require(threads >= 0, "threads must be >= 0");
    const std::string name = harness;
    orfield::ExperimentResult result;
    if (name == "rotation") {
      orfield::RotationConfig cfg =
          config_json ? orfield::rotation_config_from_json(config_json) : orfield::RotationConfig{};
      if (seed) cfg.seed = *seed;
      if (threads > 0) cfg.threads = threads;
      result = orfield::rotation_robustness(cfg);
    } else if (name == "ablation") {
      const orfield::AblationConfig base = orfield::lturn_ablation_config();
      orfield::AblationConfig cfg = config_json ? orfield::ablation_config_from_json(config_json, base) : base;
      if (seed) cfg.seed = *seed;
      if (threads > 0) cfg.threads = threads;
      result = orfield::ablation_sweep(cfg);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown harness '" + name + "' (rotation, ablation)");
    }
    *out_result = copy_string(fmt == "json" ? orfield::experiment_to_json(result)
                                            : orfield::experiment_to_csv(result));
  });
}

orf_status orf_render_svg(const orf_occupancy* occ, const orf_field* field,
                          const orf_trajectory* const* trajectories, size_t trajectory_count,
                          int32_t arrow_stride, double pixels_per_cell, char** out_svg) {
  return guard([&] {
    require(out_svg != nullptr, "null argument");
    require(trajectories != nullptr || trajectory_count == 0, "null trajectory list");
    require(arrow_stride >= 0, "arrow stride must be >= 0");
    orfield::RenderInputs in;
    in.occupancy = occ ? &occ->value : nullptr;
    in.field = field ? &field->value : nullptr;
    for (size_t i = 0; i < trajectory_count; ++i) {
      require(trajectories[i] != nullptr, "null trajectory");
      in.trajectories.push_back(&trajectories[i]->value);
    }
    orfield::RenderOptions opt;
    if (arrow_stride > 0) opt.arrow_stride = arrow_stride;
    opt.pixels_per_cell = pixels_per_cell;
    *out_svg = copy_string(orfield::render_svg(in, opt));
  });
}

}  // extern "C"
