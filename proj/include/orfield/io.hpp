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

// Serialization of rasters, routes, trajectories, parameters and reports.
//
// Rasters use the OFG1 container: an ASCII header
//
//   OFG1
//   kind <scalar|orfield|occupancy|bev>
//   width W
//   height H
//   resolution R
//   origin X Y
//   channels C
//
// followed by one blank line and W*H*C little-endian float32 values in
// row-major order. Everything else is JSON (or CSV for tables). All encoders
// are deterministic: equal inputs give equal bytes.

#ifndef ORFIELD_IO_HPP_
#define ORFIELD_IO_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "orfield/geometry.hpp"
#include "orfield/grid.hpp"
#include "orfield/metrics.hpp"
#include "orfield/planners.hpp"
#include "orfield/scenarios.hpp"
#include "orfield/trajectory.hpp"

namespace orfield {

enum class GridKind { kScalar, kOrField, kOccupancy, kBev };

std::string_view to_string(GridKind k);

// Header fields of an OFG1 blob.
struct GridHeader {
  GridKind kind = GridKind::kScalar;
  GridGeometry geometry{1, 1, 1.0};
  int channels = 1;
};

// Parses only the header; throws kParse on malformed input.
GridHeader peek_grid_header(std::string_view bytes);

std::string encode_grid(const ScalarGrid& grid);
std::string encode_grid(const OrField& field);
std::string encode_grid(const OccupancyGrid& occ);
std::string encode_grid(const BevGrid& bev);

// Decoders throw kParse when the blob is malformed or of another kind.
// Occupancy values must be exactly 0, 1 or 2. Field vectors whose float32
// norm rounds above 1 are rescaled to unit length.
ScalarGrid decode_scalar_grid(std::string_view bytes);
OrField decode_orfield(std::string_view bytes);
OccupancyGrid decode_occupancy(std::string_view bytes);
BevGrid decode_bev(std::string_view bytes);

// Whole-file helpers; failures throw kIo.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

// {"waypoints": [[x, y], ...]}
std::string route_to_json(const Route& route);
Route route_from_json(std::string_view text);

// {"poses": [[x, y, heading], ...]}
std::string trajectory_to_json(const Trajectory& traj);
Trajectory trajectory_from_json(std::string_view text);

// Flat object with the PlannerParams field names. Missing keys keep their
// defaults except `handle`, which defaults to 0.3 * planning_radius. Unknown
// keys are rejected.
std::string params_to_json(const PlannerParams& params);
PlannerParams params_from_json(std::string_view text);

// Kind is spelled as in parse_scene_kind; occlusions are
// [[min_x, min_y, max_x, max_y], ...]. Unknown keys are rejected.
std::string scene_spec_to_json(const SceneSpec& spec);
SceneSpec scene_spec_from_json(std::string_view text);

// Per-frame metrics and their means. Metrics a frame could not compute are
// written as null (JSON) or empty fields (CSV) and left out of the means.
struct EvalReport {
  std::vector<double> radii;
  double hit_threshold = 0.0;
  std::vector<FrameMetrics> frames;
};

std::string eval_report_to_json(const EvalReport& report);
std::string eval_report_to_csv(const EvalReport& report);

// Harness configuration objects. Keys mirror the config struct fields;
// nested "scene"/"scenes" use the SceneSpec schema and "params"/"point_params"
// the PlannerParams schema. Missing keys keep the defaults of `base`.
RotationConfig rotation_config_from_json(std::string_view text, const RotationConfig& base = {});
AblationConfig ablation_config_from_json(std::string_view text, const AblationConfig& base = {});

std::string experiment_to_json(const ExperimentResult& result);
// One row per case.
std::string experiment_to_csv(const ExperimentResult& result);

}  // namespace orfield

#endif  // ORFIELD_IO_HPP_
