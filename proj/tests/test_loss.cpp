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

#include <gtest/gtest.h>

#include <random>

namespace orfield {
namespace {

// Distance between two angles on the circle.
double circular_gap(double a, double b) { return std::abs(std::remainder(a - b, kTwoPi)); }

TEST(AngularResidual, SimpleValues) {
  EXPECT_NEAR(angular_residual({0.5, 0.2, 0.3}), 0.0, 1e-15);
  EXPECT_NEAR(angular_residual({0.0, 0.0, 0.25}), -0.25, 1e-15);
  // Wraps across the branch cut: 3 - (-3) = 6 -> 6 - 2pi.
  EXPECT_NEAR(angular_residual({3.0, -3.0, 0.0}), 6.0 - kTwoPi, 1e-12);
  EXPECT_THROW(angular_residual({NAN, 0.0, 0.0}), Error);
}

TEST(AngularResidual, RangeAndPeriodicity) {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> offset(-50.0, 50.0);
  std::uniform_int_distribution<int> turns(-5, 5);
  for (int i = 0; i < 20000; ++i) {
    const AngleTriple t{angle(gen), angle(gen), offset(gen)};
    const double r = angular_residual(t);
    EXPECT_LE(std::abs(r), kPi);
    const int k = turns(gen);
    const double shifted = angular_residual({t.theta_n, t.theta_d, t.delta_theta + k * kTwoPi});
    // Compared on the circle so the pi / -pi representatives agree.
    EXPECT_LE(circular_gap(r, shifted), 1e-9);
  }
}

TEST(FieldLoss, ExactOffsetsGiveZero) {
  std::mt19937_64 gen(29);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  const GridGeometry g(10, 10, 1.0);
  OrField label(g), initial(g);
  ScalarGrid offsets(g);
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const double tn = angle(gen), td = angle(gen);
    label.values()[i] = unit_from_angle(tn);
    initial.values()[i] = 0.5 * unit_from_angle(td);
    offsets.values()[i] = tn - td;
  }
  EXPECT_LT(field_loss(label, initial, offsets), 1e-6);
  // A uniform extra offset of 0.1 costs 0.1 per cell.
  for (auto& o : offsets.values()) o += 0.1;
  EXPECT_NEAR(field_loss(label, initial, offsets), 0.1 * 100, 1e-9);
}

TEST(FieldLoss, SkipsZeroVectorsAndChecksGeometry) {
  const GridGeometry g(2, 1, 1.0);
  OrField label(g), initial(g);
  ScalarGrid offsets(g, 1.0);
  label(0, 0) = {1, 0};
  initial(0, 0) = {1, 0};
  label(1, 0) = {0, 1};  // initial is zero here
  EXPECT_NEAR(field_loss(label, initial, offsets), 1.0, 1e-15);
  EXPECT_THROW(field_loss(label, initial, ScalarGrid(GridGeometry(3, 1, 1.0))), Error);
}

TEST(ApplyOffsets, RotatesUnitVectors) {
  const GridGeometry g(2, 1, 1.0);
  OrField initial(g);
  initial(0, 0) = {0.3, 0.0};
  ScalarGrid offsets(g, kPi / 2);
  const OrField out = apply_offsets(initial, offsets);
  EXPECT_NEAR(out(0, 0).x, 0.0, 1e-15);
  EXPECT_NEAR(out(0, 0).y, 1.0, 1e-15);
  EXPECT_EQ(out(1, 0), Vec2{});
}

}  // namespace
}  // namespace orfield
