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

// Field planners.
//
// Both field planners score motion by orientation energy: a cell with field
// vector n crossed in unit direction v costs
//
//   e = |n| * dtheta / 2 + (1 - |n|) * pi / 2,
//
// where dtheta in [0, pi] is the angle between n and v. An aligned confident
// cell is free; an opposed one costs pi/2, and so does a cell without
// orientation (|n| = 0).
//
// FieldRrtStar grows an RRT* tree from the vehicle whose cost is accumulated
// energy instead of length. There is no goal: every node whose tree path is at
// least planning_radius long is linked to a virtual target by a zero-energy
// edge, and the cheapest such node wins. FieldBezier scores a fan of
// endpoint-constrained cubics ending on the planning circle. point_rrt_star
// is the plain length-minimizing RRT* baseline toward a goal point.

#ifndef ORFIELD_PLANNERS_HPP_
#define ORFIELD_PLANNERS_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "orfield/geometry.hpp"
#include "orfield/grid.hpp"
#include "orfield/random.hpp"
#include "orfield/trajectory.hpp"

namespace orfield {

struct PlannerParams {
  double step_size = 1.0;        // meters
  double neighbor_radius = 2.0;  // meters
  int iterations = 1000;
  double planning_radius = 20.0;  // meters
  double handle = 6.0;            // meters, Bezier control distance
  int candidate_count = 72;
  int smoothing_radius = 2;  // cells
  std::uint64_t rng_seed = 0;
  // Extra sampling radius beyond planning_radius (meters).
  double sampling_margin = 0.0;
  // Plan on a field with twice the cell size.
  bool downsample = false;
  // point_rrt_star only: probability of sampling the goal.
  double goal_bias = 0.05;

  // Throws kInvalidArgument on violated invariants.
  void validate() const;
};

enum class PlannerKind { kFieldRrtStar, kFieldBezier, kPointRrtStar };

// field-rrt, field-bezier, point-rrt.
std::string_view to_string(PlannerKind k);
std::optional<PlannerKind> parse_planner(std::string_view name);

struct PlanResult {
  Trajectory trajectory;
  double energy = 0.0;  // field energy, or path length for point_rrt_star
  int iterations = 0;
  std::size_t node_count = 0;
  std::size_t eligible_leaves = 0;
  // No node reached the planning radius; trajectory is the longest tree path.
  bool degraded = false;
};

double cell_energy(Vec2 n, Vec2 v);

// Sum of cell_energy over supercover_cells(a, b) with v = unit(b - a).
double edge_energy(const OrField& field, Vec2 a, Vec2 b);

// Energy of a curve on the cells it occupies, using the local tangent per
// cell. Samples outside the raster count pi/2 per (virtual) cell.
double curve_energy(const OrField& field, const CubicBezier& curve);

struct RrtTree {
  std::vector<Vec2> position;
  std::vector<int> parent;  // -1 for the root
  std::vector<double> energy;
  std::vector<double> path_length;
  std::vector<double> edge_cost;  // cost of the edge from the parent
  std::vector<std::vector<int>> children;

  std::size_t size() const { return position.size(); }
  std::vector<int> path_to(int node) const;  // root first
};

// Steppable Field-RRT*; field_rrt_star() runs it to completion. The field is
// smoothed with uniform_filter(smoothing_radius) (and optionally coarsened)
// on construction. With an occupancy grid, edges touching Obstacle cells are
// rejected.
class FieldRrtStar {
 public:
  FieldRrtStar(const OrField& field, const OccupancyGrid* occupancy, const Pose& start,
               const PlannerParams& params);

  void step();
  int iterations_run() const { return iterations_; }
  const RrtTree& tree() const { return tree_; }
  const OrField& planning_field() const { return field_; }
  PlanResult result() const;

 private:
  bool edge_allowed(Vec2 a, Vec2 b) const;
  void update_incumbent();

  OrField field_;
  const OccupancyGrid* occupancy_;
  Pose start_;
  PlannerParams params_;
  Rng rng_;
  RrtTree tree_;
  int iterations_ = 0;
  double best_energy_;
  std::vector<Vec2> best_path_;
};

PlanResult field_rrt_star(const OrField& field, const OccupancyGrid* occupancy, const Pose& start,
                          const PlannerParams& params);

// Heading used by field_bezier for a pose: field direction at the cell, or
// `fallback` where the field vanishes.
double field_heading(const OrField& field, Vec2 p, double fallback);

struct BezierCandidate {
  CubicBezier curve;
  double energy = 0.0;
  int index = 0;
};

// All candidates whose endpoint lies inside the field, in index order.
// Endpoint k sits at angle start_heading + 2 pi k / candidate_count.
std::vector<BezierCandidate> field_bezier_candidates(const OrField& smoothed_field,
                                                      const Pose& start,
                                                      const PlannerParams& params);

PlanResult field_bezier(const OrField& field, const Pose& start, const PlannerParams& params);

// Samples a cubic into a trajectory with analytic tangent headings.
Trajectory sample_curve(const CubicBezier& curve, double spacing);

PlanResult point_rrt_star(const OccupancyGrid& occ, const Pose& start, Vec2 goal,
                          const PlannerParams& params);

}  // namespace orfield

#endif  // ORFIELD_PLANNERS_HPP_
