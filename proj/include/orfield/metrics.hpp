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

// Trajectory evaluation.
//
// Planned and reference trajectories are compared at the points where they
// first cross a set of circles around the vehicle. Displacement errors, hit
// indicators and coverage are computed over the pairs matched by radius.

#ifndef ORFIELD_METRICS_HPP_
#define ORFIELD_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "orfield/grid.hpp"
#include "orfield/trajectory.hpp"

namespace orfield {

struct CircleSamples {
  std::vector<double> radii;    // radii that were reached, ascending
  std::vector<Vec2> points;     // crossing point per reached radius
  std::vector<double> omitted;  // radii the trajectory never reaches
};

// First crossing (by arc length) of each circle about origin. Radii must be
// positive and strictly increasing.
CircleSamples sample_by_circles(const Trajectory& traj, Vec2 origin, std::span<const double> radii);

// Ground-truth and planned points matched by index.
struct SampledPair {
  std::vector<Vec2> truth;
  std::vector<Vec2> planned;

  // Throws kInvalidArgument unless both sides are nonempty and equally long.
  void validate() const;
};

// Pairs the radii reached by both sample sets.
SampledPair match_samples(const CircleSamples& truth, const CircleSamples& planned);

double ade(const SampledPair& s);
double fde(const SampledPair& s);
// 1 when every matched point lies strictly within d, else 0.
int hit_rate(const SampledPair& s, double d);
double coverage(const SampledPair& s, double d);

struct FusionConfig {
  double base_variance = 0.25;   // m^2
  double variance_growth = 0.01;  // m^2 per m^2 of lookahead

  void validate() const;
};

struct WaypointPrediction {
  Pose source;
  Vec2 waypoint;
  double lookahead = 0.0;  // meters
};

// Inverse-variance weighted mean, variance = base + growth * lookahead^2.
Vec2 fuse_waypoints(std::span<const WaypointPrediction> predictions, const FusionConfig& cfg);

// Share of reference points, thinned to be at least `dedup` apart, that have
// a driven pose within r.
double online_coverage(const Trajectory& reference, const Trajectory& driven, double r,
                       double dedup);

// Share of poses on Free cells; poses outside the grid count as not Free.
double in_free_space_fraction(const Trajectory& traj, const OccupancyGrid& occ);

struct FrameMetrics {
  std::size_t matched = 0;
  std::vector<double> omitted;  // radii missing from either trajectory
  // Absent when no radius is matched.
  std::optional<double> ade;
  std::optional<double> fde;
  std::optional<int> hit;
  std::optional<double> coverage;
};

// Circle sampling of both trajectories around the first truth pose, then
// every metric over the matched radii.
FrameMetrics evaluate_frame(const Trajectory& planned, const Trajectory& truth,
                            std::span<const double> radii, double d);

}  // namespace orfield

#endif  // ORFIELD_METRICS_HPP_
