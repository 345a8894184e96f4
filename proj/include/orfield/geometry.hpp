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

#ifndef ORFIELD_GEOMETRY_HPP_
#define ORFIELD_GEOMETRY_HPP_

#include <cstddef>
#include <vector>

#include "orfield/vec2.hpp"

namespace orfield {

// Waypoint polyline in world meters. At least two waypoints, consecutive
// waypoints distinct.
class Route {
 public:
  explicit Route(std::vector<Vec2> waypoints);

  const std::vector<Vec2>& waypoints() const { return waypoints_; }
  std::size_t size() const { return waypoints_.size(); }
  double length() const;

  // Point at arc length s, clamped to the route ends.
  Vec2 point_at(double s) const;

  friend bool operator==(const Route&, const Route&) = default;

 private:
  std::vector<Vec2> waypoints_;
};

struct CubicBezier {
  Vec2 p0;
  Vec2 c1;
  Vec2 c2;
  Vec2 p3;

  Vec2 eval(double t) const;
  Vec2 derivative(double t) const;
};

struct BezierChain {
  std::vector<CubicBezier> segments;
};

Vec2 bezier_eval(const CubicBezier& b, double t);

// Unit tangent at t. Falls back to the chord p3 - p0 when the derivative
// vanishes; throws kDegenerate when the chord is zero as well.
Vec2 bezier_tangent(const CubicBezier& b, double t);

// One cubic per route edge through the waypoints. Control points follow the
// averaged edge direction at each waypoint, at 0.35 of the edge length.
BezierChain route_to_bezier_chain(const Route& route);

struct ChainProjection {
  std::size_t segment = 0;
  double t = 0.0;
  Vec2 point;
  Vec2 tangent;
  double distance = 0.0;
};

inline constexpr int kChainCoarseSamples = 64;
inline constexpr int kChainRefineIterations = 30;

// Global closest point: coarse sampling per segment, then golden-section
// refinement inside the best bracket. Ties go to the lower segment, then the
// lower t.
ChainProjection closest_point_on_chain(const BezierChain& chain, Vec2 q);

// Endpoint-constrained cubic: c1 = start + handle * dir(start),
// c2 = end - handle * dir(end).
CubicBezier plan_bezier_candidate(const Pose& start, const Pose& end, double handle);

// Polyline length of `samples` uniform-t points; good enough for step sizing.
double approximate_length(const CubicBezier& b, int samples = 32);

}  // namespace orfield

#endif  // ORFIELD_GEOMETRY_HPP_
