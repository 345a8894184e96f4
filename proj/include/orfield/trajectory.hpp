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

#ifndef ORFIELD_TRAJECTORY_HPP_
#define ORFIELD_TRAJECTORY_HPP_

#include <cstddef>
#include <vector>

#include "orfield/vec2.hpp"

namespace orfield {

// Ordered poses (at least two), headings wrapped to [-pi, pi].
class Trajectory {
 public:
  explicit Trajectory(std::vector<Pose> poses);

  // Headings from consecutive positions; the last pose copies the heading of
  // the final segment. Zero-length segments inherit the previous heading,
  // starting from initial_heading.
  static Trajectory from_positions(const std::vector<Vec2>& positions, double initial_heading = 0.0);

  const std::vector<Pose>& poses() const { return poses_; }
  std::size_t size() const { return poses_.size(); }
  const Pose& front() const { return poses_.front(); }
  const Pose& back() const { return poses_.back(); }

  // Cumulative arc length per pose; arc_lengths()[0] == 0.
  const std::vector<double>& arc_lengths() const { return arc_; }
  double length() const { return arc_.back(); }

  std::vector<Vec2> positions() const;

  // Position at arc length s (clamped).
  Vec2 point_at(double s) const;

  friend bool operator==(const Trajectory& a, const Trajectory& b) { return a.poses_ == b.poses_; }

 private:
  std::vector<Pose> poses_;
  std::vector<double> arc_;
};

}  // namespace orfield

#endif  // ORFIELD_TRAJECTORY_HPP_
