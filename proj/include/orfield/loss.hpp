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

// Wrapped angular offset loss between a label field and an initial field
// corrected by per-cell radian offsets.

#ifndef ORFIELD_LOSS_HPP_
#define ORFIELD_LOSS_HPP_

#include "orfield/grid.hpp"

namespace orfield {

struct AngleTriple {
  double theta_n = 0.0;      // label angle, [-pi, pi]
  double theta_d = 0.0;      // initial-field angle, [-pi, pi]
  double delta_theta = 0.0;  // predicted offset, any real
};

// r = (theta_n - (theta_d + delta_theta)) mod 2pi in [0, 2pi); returns
// r - 2pi when r > pi, else r. So the result lies in (-pi, pi] and r == pi
// maps to +pi.
double angular_residual(const AngleTriple& t);

// Sum of |angular_residual| over cells where both label and initial vectors
// are nonzero.
double field_loss(const OrField& label, const OrField& initial, const ScalarGrid& offsets);

// (cos(theta_d + offset), sin(theta_d + offset)) per nonzero initial vector;
// zero vectors pass through.
OrField apply_offsets(const OrField& initial, const ScalarGrid& offsets);

}  // namespace orfield

#endif  // ORFIELD_LOSS_HPP_
