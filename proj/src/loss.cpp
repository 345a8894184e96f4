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

#include "orfield/loss.hpp"

#include <cmath>

namespace orfield {

double angular_residual(const AngleTriple& t) {
  if (!std::isfinite(t.theta_n) || !std::isfinite(t.theta_d) || !std::isfinite(t.delta_theta)) {
    throw Error(ErrorCode::kInvalidArgument, "angular residual needs finite angles");
  }
  double r = std::fmod(t.theta_n - (t.theta_d + t.delta_theta), kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod + shift can land on 2pi itself for tiny negative inputs.
  if (r >= kTwoPi) r = 0.0;
  return r > kPi ? r - kTwoPi : r;
}

double field_loss(const OrField& label, const OrField& initial, const ScalarGrid& offsets) {
  if (label.geometry() != initial.geometry() || label.geometry() != offsets.geometry()) {
    throw Error(ErrorCode::kGeometryMismatch, "loss rasters must share one geometry");
  }
  const auto n = label.values();
  const auto d = initial.values();
  const auto o = offsets.values();
  double loss = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] == Vec2{} || d[i] == Vec2{}) continue;
    loss += std::abs(angular_residual({n[i].angle(), d[i].angle(), o[i]}));
  }
  return loss;
}

OrField apply_offsets(const OrField& initial, const ScalarGrid& offsets) {
  if (initial.geometry() != offsets.geometry()) {
    throw Error(ErrorCode::kGeometryMismatch, "offsets must share the field geometry");
  }
  OrField out(initial.geometry());
  const auto d = initial.values();
  const auto o = offsets.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < d.size(); ++i) {
    dst[i] = d[i] == Vec2{} ? Vec2{} : unit_from_angle(d[i].angle() + o[i]);
  }
  return out;
}

}  // namespace orfield
