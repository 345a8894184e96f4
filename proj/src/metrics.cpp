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

#include "orfield/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orfield {
namespace {

// Smallest t in [0,1] with |a + t(b-a) - o| = r, if any.
std::optional<double> first_crossing(Vec2 a, Vec2 b, Vec2 o, double r) {
  const Vec2 d = b - a;
  const Vec2 w = a - o;
  const double qa = dot(d, d);
  const double qb = 2.0 * dot(w, d);
  const double qc = dot(w, w) - r * r;
  if (qa == 0.0) {
    if (qc == 0.0) return 0.0;
    return std::nullopt;
  }
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  constexpr double kEps = 1e-12;
  for (double t : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)}) {
    if (t >= -kEps && t <= 1.0 + kEps) return std::clamp(t, 0.0, 1.0);
  }
  return std::nullopt;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be positive");
  }
}

}  // namespace

CircleSamples sample_by_circles(const Trajectory& traj, Vec2 origin, std::span<const double> radii) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require_positive(radii[i], "sampling radius");
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "sampling radii must be strictly increasing");
    }
  }
  CircleSamples out;
  const auto& poses = traj.poses();
  for (double r : radii) {
    bool found = false;
    for (std::size_t i = 0; i + 1 < poses.size() && !found; ++i) {
      const Vec2 a = poses[i].position;
      const Vec2 b = poses[i + 1].position;
      if (const auto t = first_crossing(a, b, origin, r)) {
        out.radii.push_back(r);
        out.points.push_back(a + (b - a) * *t);
        found = true;
      }
    }
    if (!found) out.omitted.push_back(r);
  }
  return out;
}

void SampledPair::validate() const {
  if (truth.empty() || truth.size() != planned.size()) {
    throw Error(ErrorCode::kInvalidArgument, "sampled pair needs equal, nonempty point lists");
  }
}

SampledPair match_samples(const CircleSamples& truth, const CircleSamples& planned) {
  SampledPair out;
  std::size_t j = 0;
  for (std::size_t i = 0; i < truth.radii.size(); ++i) {
    while (j < planned.radii.size() && planned.radii[j] < truth.radii[i]) ++j;
    if (j < planned.radii.size() && planned.radii[j] == truth.radii[i]) {
      out.truth.push_back(truth.points[i]);
      out.planned.push_back(planned.points[j]);
    }
  }
  return out;
}

double ade(const SampledPair& s) {
  s.validate();
  double sum = 0.0;
  for (std::size_t i = 0; i < s.truth.size(); ++i) sum += distance(s.truth[i], s.planned[i]);
  return sum / static_cast<double>(s.truth.size());
}

double fde(const SampledPair& s) {
  s.validate();
  return distance(s.truth.back(), s.planned.back());
}

int hit_rate(const SampledPair& s, double d) {
  s.validate();
  require_positive(d, "hit threshold");
  for (std::size_t i = 0; i < s.truth.size(); ++i) {
    if (!(distance(s.truth[i], s.planned[i]) < d)) return 0;
  }
  return 1;
}

double coverage(const SampledPair& s, double d) {
  s.validate();
  require_positive(d, "hit threshold");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < s.truth.size(); ++i) {
    hits += distance(s.truth[i], s.planned[i]) < d ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(s.truth.size());
}

void FusionConfig::validate() const {
  require_positive(base_variance, "base_variance");
  if (!(variance_growth >= 0.0) || !std::isfinite(variance_growth)) {
    throw Error(ErrorCode::kInvalidArgument, "variance_growth must be >= 0");
  }
}

Vec2 fuse_waypoints(std::span<const WaypointPrediction> predictions, const FusionConfig& cfg) {
  cfg.validate();
  if (predictions.empty()) throw Error(ErrorCode::kInvalidArgument, "nothing to fuse");
  double total = 0.0;
  for (const auto& p : predictions) {
    total += 1.0 / (cfg.base_variance + cfg.variance_growth * p.lookahead * p.lookahead);
  }
  Vec2 fused;
  for (const auto& p : predictions) {
    const double w = 1.0 / (cfg.base_variance + cfg.variance_growth * p.lookahead * p.lookahead);
    fused += p.waypoint * (w / total);
  }
  return fused;
}

double online_coverage(const Trajectory& reference, const Trajectory& driven, double r,
                       double dedup) {
  require_positive(r, "coverage radius");
  require_positive(dedup, "dedup distance");
  std::vector<Vec2> kept;
  for (const Pose& p : reference.poses()) {
    const bool near_kept = std::any_of(kept.begin(), kept.end(),
                                       [&](Vec2 q) { return distance(p.position, q) < dedup; });
    if (!near_kept) kept.push_back(p.position);
  }
  std::size_t covered = 0;
  for (Vec2 q : kept) {
    const bool hit = std::any_of(driven.poses().begin(), driven.poses().end(),
                                 [&](const Pose& p) { return distance(p.position, q) <= r; });
    covered += hit ? 1 : 0;
  }
  return static_cast<double>(covered) / static_cast<double>(kept.size());
}

double in_free_space_fraction(const Trajectory& traj, const OccupancyGrid& occ) {
  std::size_t free = 0;
  for (const Pose& p : traj.poses()) {
    const auto c = occ.geometry().world_to_cell(p.position);
    free += c && occ(*c) == CellState::kFree ? 1 : 0;
  }
  return static_cast<double>(free) / static_cast<double>(traj.size());
}

FrameMetrics evaluate_frame(const Trajectory& planned, const Trajectory& truth,
                            std::span<const double> radii, double d) {
  require_positive(d, "hit threshold");
  const Vec2 origin = truth.front().position;
  const CircleSamples t = sample_by_circles(truth, origin, radii);
  const CircleSamples p = sample_by_circles(planned, origin, radii);
  const SampledPair pair = match_samples(t, p);
  FrameMetrics out;
  out.matched = pair.truth.size();
  for (double r : radii) {
    const bool in_t = std::find(t.radii.begin(), t.radii.end(), r) != t.radii.end();
    const bool in_p = std::find(p.radii.begin(), p.radii.end(), r) != p.radii.end();
    if (!in_t || !in_p) out.omitted.push_back(r);
  }
  if (out.matched == 0) return out;
  out.ade = ade(pair);
  out.fde = fde(pair);
  out.hit = hit_rate(pair, d);
  out.coverage = coverage(pair, d);
  return out;
}

}  // namespace orfield
