/* Copyright 2026 The OrField Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the orfield library.
 *
 * Conventions:
 *   - Every fallible call returns an orf_status. On failure, orf_last_error()
 *     describes the problem; the message is thread-local and stays valid until
 *     the next failing call on the same thread.
 *   - Objects are opaque handles created by *_create, *_load, *_build or
 *     *_run calls and released with the matching *_free (NULL is accepted).
 *     Output handles are written only on success.
 *   - Strings returned through char** are heap-allocated and must be released
 *     with orf_string_free.
 *   - Names (field variants, planners, scene kinds) are the lower-case
 *     spellings used in the JSON formats, e.g. "gradient-full", "field-rrt".
 *   - Handles are immutable after creation and may be shared across threads.
 */

#ifndef ORFIELD_ORFIELD_H_
#define ORFIELD_ORFIELD_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(ORFIELD_BUILDING_LIBRARY)
#define ORF_API __declspec(dllexport)
#else
#define ORF_API __declspec(dllimport)
#endif
#else
#define ORF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum orf_status {
  ORF_OK = 0,
  ORF_INVALID_ARGUMENT = 1,
  ORF_OUT_OF_RANGE = 2,
  ORF_DEGENERATE = 3,
  ORF_GEOMETRY_MISMATCH = 4,
  ORF_NO_PATH = 5,
  ORF_PARSE_ERROR = 6,
  ORF_IO_ERROR = 7,
  ORF_INTERNAL_ERROR = 8
} orf_status;

/* Raster layout: width x height cells, cell (0, 0) centered at origin. */
typedef struct orf_geometry {
  int32_t width;
  int32_t height;
  double resolution;
  double origin_x;
  double origin_y;
} orf_geometry;

typedef struct orf_pose {
  double x;
  double y;
  double heading; /* radians */
} orf_pose;

/* Cell states in orf_occupancy_create / orf_occupancy_states. */
enum { ORF_CELL_FREE = 0, ORF_CELL_OBSTACLE = 1, ORF_CELL_UNKNOWN = 2 };

typedef struct orf_occupancy orf_occupancy;
typedef struct orf_field orf_field;
typedef struct orf_scalar_grid orf_scalar_grid;
typedef struct orf_route orf_route;
typedef struct orf_trajectory orf_trajectory;
typedef struct orf_scene orf_scene;
typedef struct orf_plan orf_plan;

ORF_API const char* orf_version(void);
ORF_API const char* orf_status_name(orf_status status);
ORF_API const char* orf_last_error(void);
ORF_API void orf_string_free(char* s);

/* Occupancy grids (OFG1 kind "occupancy"). */
ORF_API orf_status orf_occupancy_create(const orf_geometry* geometry, const uint8_t* states,
                                        orf_occupancy** out);
ORF_API orf_status orf_occupancy_load(const char* path, orf_occupancy** out);
ORF_API orf_status orf_occupancy_save(const orf_occupancy* occ, const char* path);
ORF_API orf_status orf_occupancy_geometry(const orf_occupancy* occ, orf_geometry* out);
/* Copies width*height states in row-major order; capacity is in elements. */
ORF_API orf_status orf_occupancy_states(const orf_occupancy* occ, uint8_t* out, size_t capacity);
ORF_API void orf_occupancy_free(orf_occupancy* occ);

/* Frontiers: runs of Free cells touching Unknown or the border, at least
 * min_length cells long, in deterministic scan order. */
ORF_API orf_status orf_frontier_count(const orf_occupancy* occ, int32_t min_length, size_t* out);
ORF_API orf_status orf_frontier_representative(const orf_occupancy* occ, int32_t min_length,
                                               size_t index, int32_t* col, int32_t* row);

/* Routes: {"waypoints": [[x, y], ...]}. xy holds 2*count doubles. */
ORF_API orf_status orf_route_create(const double* xy, size_t count, orf_route** out);
ORF_API orf_status orf_route_load(const char* path, orf_route** out);
ORF_API orf_status orf_route_save(const orf_route* route, const char* path);
ORF_API orf_status orf_route_size(const orf_route* route, size_t* out);
ORF_API orf_status orf_route_waypoints(const orf_route* route, double* xy, size_t capacity);
ORF_API void orf_route_free(orf_route* route);

/* Trajectories: {"poses": [[x, y, heading], ...]}. */
ORF_API orf_status orf_trajectory_create(const orf_pose* poses, size_t count, orf_trajectory** out);
ORF_API orf_status orf_trajectory_load(const char* path, orf_trajectory** out);
ORF_API orf_status orf_trajectory_save(const orf_trajectory* traj, const char* path);
ORF_API orf_status orf_trajectory_size(const orf_trajectory* traj, size_t* out);
ORF_API orf_status orf_trajectory_poses(const orf_trajectory* traj, orf_pose* out, size_t capacity);
ORF_API void orf_trajectory_free(orf_trajectory* traj);

/* Orientation fields (OFG1 kind "orfield"); xy holds 2 doubles per cell. */
ORF_API orf_status orf_field_create(const orf_geometry* geometry, const double* xy, orf_field** out);
ORF_API orf_status orf_field_load(const char* path, orf_field** out);
ORF_API orf_status orf_field_save(const orf_field* field, const char* path);
ORF_API orf_status orf_field_geometry(const orf_field* field, orf_geometry* out);
ORF_API orf_status orf_field_values(const orf_field* field, double* xy, size_t capacity);
ORF_API void orf_field_free(orf_field* field);

/* Builds a field of the named variant.
 *   "initial", "nearest":      need a route and either occ or geometry.
 *   "dijkstra", "gradient",
 *   "dijkstra-full",
 *   "gradient-full":           need occ and target_frontier >= 0, an index
 *                              into the frontiers of length >= min_length.
 * out_distance may be NULL; for "initial" it receives the distance to the
 * route curve, otherwise it is set to NULL. */
ORF_API orf_status orf_field_build(const char* variant, const orf_occupancy* occ,
                                   const orf_route* route, const orf_geometry* geometry,
                                   int64_t target_frontier, int32_t min_length, orf_field** out_field,
                                   orf_scalar_grid** out_distance);

/* Scalar grids (OFG1 kind "scalar"). */
ORF_API orf_status orf_scalar_grid_save(const orf_scalar_grid* grid, const char* path);
ORF_API orf_status orf_scalar_grid_geometry(const orf_scalar_grid* grid, orf_geometry* out);
ORF_API orf_status orf_scalar_grid_values(const orf_scalar_grid* grid, double* out, size_t capacity);
ORF_API void orf_scalar_grid_free(orf_scalar_grid* grid);

/* Synthetic scenes from a SceneSpec JSON document. A non-NULL seed replaces
 * the spec's rng_seed. */
ORF_API orf_status orf_scene_build(const char* spec_json, const uint64_t* seed, orf_scene** out);
/* full != 0 selects the grid without occlusions. */
ORF_API orf_status orf_scene_occupancy(const orf_scene* scene, int full, orf_occupancy** out);
ORF_API orf_status orf_scene_route(const orf_scene* scene, orf_route** out);
ORF_API orf_status orf_scene_ground_truth(const orf_scene* scene, orf_trajectory** out);
/* Field of the variant with the scene's own target selection. */
ORF_API orf_status orf_scene_field(const orf_scene* scene, const char* variant, orf_field** out);
/* The effective SceneSpec as JSON. */
ORF_API orf_status orf_scene_spec_json(const orf_scene* scene, char** out);
ORF_API void orf_scene_free(orf_scene* scene);

/* Runs a planner.
 *   "field-rrt", "field-bezier": need field; occ (optional) enforces
 *                                collision checks for "field-rrt".
 *   "point-rrt":                 needs occ and goal_xy (2 doubles).
 * params_json is a PlannerParams object or NULL for defaults. A non-NULL
 * run seed replaces rng_seed with the planner stream derived from it; the
 * effective value is echoed by orf_plan_report_json. */
ORF_API orf_status orf_plan_run(const char* planner, const orf_field* field, const orf_occupancy* occ,
                                const char* params_json, const uint64_t* seed, orf_pose start,
                                const double* goal_xy, orf_plan** out);
ORF_API orf_status orf_plan_trajectory(const orf_plan* plan, orf_trajectory** out);
/* 1 when no tree node reached the planning radius (fallback trajectory). */
ORF_API orf_status orf_plan_degraded(const orf_plan* plan, int* out);
/* Planner name, effective params, iterations, energy, node and leaf counts. */
ORF_API orf_status orf_plan_report_json(const orf_plan* plan, char** out);
ORF_API void orf_plan_free(orf_plan* plan);

/* Evaluates one planned trajectory against a reference at the given radii
 * (strictly increasing). format is "json" or "csv". */
ORF_API orf_status orf_evaluate(const orf_trajectory* planned, const orf_trajectory* truth,
                                const double* radii, size_t radius_count, double hit_threshold,
                                const char* format, char** out_report);

/* Runs a harness: "rotation" or "ablation". config_json may be NULL for the
 * built-in defaults (the ablation default is the occluded left-turn study).
 * A non-NULL seed replaces the config seed; threads > 0 overrides the config
 * thread count. format is "json" or "csv". */
ORF_API orf_status orf_experiment_run(const char* harness, const char* config_json, const uint64_t* seed,
                                      int32_t threads, const char* format, char** out_result);

/* Layered SVG. Any input may be NULL / empty; arrow_stride 0 draws no arrows
 * and negative values are rejected. */
ORF_API orf_status orf_render_svg(const orf_occupancy* occ, const orf_field* field,
                                  const orf_trajectory* const* trajectories, size_t trajectory_count,
                                  int32_t arrow_stride, double pixels_per_cell, char** out_svg);

#ifdef __cplusplus
}
#endif

#endif /* ORFIELD_ORFIELD_H_ */
