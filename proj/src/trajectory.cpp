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

#include "orfield/trajectory.hpp"

#include <cmath>

#include "orfield/error.hpp"

namespace orfield {

Trajectory::Trajectory(std::vector<Pose> poses) : poses_(std::move(poses)) {
  if (poses_.size() < 2) throw Error(ErrorCode::kInvalidArgument, "trajectory needs at least two poses");
  arc_.reserve(poses_.size());
  arc_.push_back(0.0);
  for (std::size_t i = 0; i < poses_.size(); ++i) {
    Pose& p = poses_[i];
    if (!std::isfinite(p.position.x) || !std::isfinite(p.position.y) || !std::isfinite(p.heading)) {
      throw Error(ErrorCode::kInvalidArgument, "trajectory poses must be finite");
    }
    p.heading = wrap_angle(p.heading);
    if (i > 0) arc_.push_back(arc_.back() + distance(poses_[i - 1].position, p.position));
  }
}

Trajectory Trajectory::from_positions(const std::vector<Vec2>& positions, double initial_heading) {
  if (positions.size() < 2) throw Error(ErrorCode::kInvalidArgument, "trajectory needs at least two poses");
  std::vector<Pose> poses(positions.size());
  double heading = initial_heading;
  for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
    const Vec2 d = positions[i + 1] - positions[i];
    if (d.squared_norm() > 0.0) heading = d.angle();
    poses[i] = {positions[i], heading};
  }
  poses.back() = {positions.back(), heading};
  return Trajectory(std::move(poses));
}

std::vector<Vec2> Trajectory::positions() const {
  std::vector<Vec2> out;
  out.reserve(poses_.size());
  for (const Pose& p : poses_) out.push_back(p.position);
  return out;
}

Vec2 Trajectory::point_at(double s) const {
  if (s <= 0.0) return poses_.front().position;
  for (std::size_t i = 1; i < poses_.size(); ++i) {
    if (s <= arc_[i]) {
      const double seg = arc_[i] - arc_[i - 1];
      if (seg <= 0.0) return poses_[i].position;
      const double t = (s - arc_[i - 1]) / seg;
      return poses_[i - 1].position + (poses_[i].position - poses_[i - 1].position) * t;
    }
  }
  return poses_.back().position;
}

}  // namespace orfield
