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

#include "orfield/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orfield/error.hpp"

namespace orfield {

Route::Route(std::vector<Vec2> waypoints) : waypoints_(std::move(waypoints)) {
  if (waypoints_.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "route needs at least two waypoints");
  }
  for (const Vec2& w : waypoints_) {
    if (!std::isfinite(w.x) || !std::isfinite(w.y)) {
      throw Error(ErrorCode::kInvalidArgument, "route waypoints must be finite");
    }
  }
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    if (waypoints_[i] == waypoints_[i - 1]) {
      throw Error(ErrorCode::kDegenerate, "route has repeated consecutive waypoints");
    }
  }
}

double Route::length() const {
  double s = 0.0;
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    s += distance(waypoints_[i - 1], waypoints_[i]);
  }
  return s;
}

Vec2 Route::point_at(double s) const {
  if (s <= 0.0) return waypoints_.front();
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    const double len = distance(waypoints_[i - 1], waypoints_[i]);
    if (s <= len) return waypoints_[i - 1] + (waypoints_[i] - waypoints_[i - 1]) * (s / len);
    s -= len;
  }
  return waypoints_.back();
}

Vec2 CubicBezier::eval(double t) const {
  const double u = 1.0 - t;
  const double b0 = u * u * u;
  const double b1 = 3.0 * u * u * t;
  const double b2 = 3.0 * u * t * t;
  const double b3 = t * t * t;
  return {b0 * p0.x + b1 * c1.x + b2 * c2.x + b3 * p3.x,
          b0 * p0.y + b1 * c1.y + b2 * c2.y + b3 * p3.y};
}

Vec2 CubicBezier::derivative(double t) const {
  const double u = 1.0 - t;
  return 3.0 * u * u * (c1 - p0) + 6.0 * u * t * (c2 - c1) + 3.0 * t * t * (p3 - c2);
}

Vec2 bezier_eval(const CubicBezier& b, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "bezier parameter outside [0,1]");
  }
  return b.eval(t);
}

Vec2 bezier_tangent(const CubicBezier& b, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "bezier parameter outside [0,1]");
  }
  const Vec2 d = b.derivative(t);
  const double n = d.norm();
  if (n > 1e-12) return d / n;
  const Vec2 chord = b.p3 - b.p0;
  const double cn = chord.norm();
  if (cn > 1e-12) return chord / cn;
  throw Error(ErrorCode::kDegenerate, "bezier curve is degenerate");
}

BezierChain route_to_bezier_chain(const Route& route) {
  const auto& w = route.waypoints();
  const std::size_t n = w.size();
  std::vector<Vec2> edge_dir(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) edge_dir[i] = normalized_or_zero(w[i + 1] - w[i]);

  // Tangent direction at each waypoint.
  std::vector<Vec2> tangent(n);
  tangent.front() = edge_dir.front();
  tangent.back() = edge_dir.back();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Vec2 avg = normalized_or_zero(edge_dir[i - 1] + edge_dir[i]);
    // A full reversal has no average direction; keep the outgoing edge.
    tangent[i] = avg == Vec2{} ? edge_dir[i] : avg;
  }

  constexpr double kHandleFraction = 0.35;
  BezierChain chain;
  chain.segments.reserve(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double beta = kHandleFraction * distance(w[i], w[i + 1]);
    chain.segments.push_back(
        {w[i], w[i] + beta * tangent[i], w[i + 1] - beta * tangent[i + 1], w[i + 1]});
  }
  return chain;
}

ChainProjection closest_point_on_chain(const BezierChain& chain, Vec2 q) {
  if (chain.segments.empty()) throw Error(ErrorCode::kInvalidArgument, "empty bezier chain");

  std::size_t best_seg = 0;
  int best_k = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < chain.segments.size(); ++s) {
    const CubicBezier& b = chain.segments[s];
    for (int k = 0; k <= kChainCoarseSamples; ++k) {
      const double d2 = (b.eval(static_cast<double>(k) / kChainCoarseSamples) - q).squared_norm();
      if (d2 < best_d2) {
        best_d2 = d2;
        best_seg = s;
        best_k = k;
      }
    }
  }

  const CubicBezier& b = chain.segments[best_seg];
  const auto d2_at = [&](double t) { return (b.eval(t) - q).squared_norm(); };
  double lo = std::max(0.0, static_cast<double>(best_k - 1) / kChainCoarseSamples);
  double hi = std::min(1.0, static_cast<double>(best_k + 1) / kChainCoarseSamples);
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = d2_at(x1);
  double f2 = d2_at(x2);
  for (int i = 0; i < kChainRefineIterations; ++i) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = d2_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = d2_at(x2);
    }
  }
  double t = 0.5 * (lo + hi);
  // Golden section only resolves t to ~sqrt(eps) on a flat minimum; a few
  // Newton steps on d/dt |B - q|^2 / 2 polish it. A step is kept only if it
  // stays in the bracket and does not increase the distance.
  const Vec2 a2 = 6.0 * (b.c2 - 2.0 * b.c1 + b.p0);
  const Vec2 b2 = 6.0 * (b.p3 - 2.0 * b.c2 + b.c1);
  for (int i = 0; i < 4; ++i) {
    const Vec2 r = b.eval(t) - q;
    const Vec2 d1 = b.derivative(t);
    const Vec2 dd = (1.0 - t) * a2 + t * b2;
    const double slope = dot(r, d1);
    const double curvature = d1.squared_norm() + dot(r, dd);
    if (!(curvature > 0.0)) break;
    const double next = t - slope / curvature;
    if (!(next >= lo && next <= hi) || d2_at(next) > d2_at(t)) break;
    t = next;
  }
  double d2 = d2_at(t);
  const double coarse_t = static_cast<double>(best_k) / kChainCoarseSamples;
  if (best_d2 <= d2) {
    t = coarse_t;
    d2 = best_d2;
  }

  ChainProjection out;
  out.segment = best_seg;
  out.t = t;
  out.point = b.eval(t);
  out.tangent = bezier_tangent(b, t);
  out.distance = std::sqrt(d2);
  return out;
}

CubicBezier plan_bezier_candidate(const Pose& start, const Pose& end, double handle) {
  if (!(handle > 0.0)) throw Error(ErrorCode::kInvalidArgument, "bezier handle must be > 0");
  const Vec2 ds = start.direction();
  const Vec2 de = end.direction();
  return {start.position, start.position + handle * ds, end.position - handle * de,
          end.position};
}

double approximate_length(const CubicBezier& b, int samples) {
  double len = 0.0;
  Vec2 prev = b.p0;
  for (int i = 1; i <= samples; ++i) {
    const Vec2 p = b.eval(static_cast<double>(i) / samples);
    len += distance(prev, p);
    prev = p;
  }
  return len;
}

}  // namespace orfield
