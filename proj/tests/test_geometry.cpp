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

#include <gtest/gtest.h>

#include <random>

#include "orfield/error.hpp"
#include "orfield/trajectory.hpp"

namespace orfield {
namespace {

void expect_vec_near(Vec2 a, Vec2 b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
}

TEST(Route, Validation) {
  EXPECT_THROW(Route({{0, 0}}), Error);
  try {
    Route({{0, 0}, {1, 0}, {1, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerate);
  }
  EXPECT_THROW(Route({{0, 0}, {INFINITY, 0}}), Error);
}

TEST(Route, LengthAndPointAt) {
  const Route r({{0, 0}, {3, 0}, {3, 4}});
  EXPECT_DOUBLE_EQ(r.length(), 7.0);
  expect_vec_near(r.point_at(1.5), {1.5, 0}, 1e-12);
  expect_vec_near(r.point_at(5.0), {3, 2}, 1e-12);
  expect_vec_near(r.point_at(-1.0), {0, 0}, 0.0);
  expect_vec_near(r.point_at(99.0), {3, 4}, 0.0);
}

TEST(CubicBezier, EndpointsAndDerivative) {
  const CubicBezier b{{0, 0}, {1, 2}, {3, 3}, {4, 0}};
  expect_vec_near(bezier_eval(b, 0.0), b.p0, 0.0);
  expect_vec_near(bezier_eval(b, 1.0), b.p3, 1e-15);
  for (double t : {0.1, 0.37, 0.5, 0.93}) {
    const double h = 1e-6;
    const Vec2 fd = (b.eval(t + h) - b.eval(t - h)) / (2 * h);
    expect_vec_near(b.derivative(t), fd, 1e-6);
    const Vec2 u = bezier_tangent(b, t);
    EXPECT_NEAR(u.norm(), 1.0, 1e-12);
  }
  // Hand-evaluated midpoint: (p0 + 3 c1 + 3 c2 + p3) / 8.
  expect_vec_near(b.eval(0.5), {(0 + 3 + 9 + 4) / 8.0, (0 + 6 + 9 + 0) / 8.0}, 1e-15);
  EXPECT_THROW(bezier_eval(b, 1.5), Error);
  EXPECT_THROW(bezier_tangent(b, -0.1), Error);
}

TEST(CubicBezier, TangentFallsBackToChord) {
  // Coincident control points at the start give a zero derivative at t = 0.
  const CubicBezier b{{0, 0}, {0, 0}, {2, 0}, {2, 0}};
  expect_vec_near(bezier_tangent(b, 0.0), {1, 0}, 1e-12);
  const CubicBezier point{{1, 1}, {1, 1}, {1, 1}, {1, 1}};
  EXPECT_THROW(bezier_tangent(point, 0.5), Error);
}

TEST(BezierChain, ControlPointsFromRoute) {
  const Route r({{0, 0}, {10, 0}, {10, 10}});
  const BezierChain chain = route_to_bezier_chain(r);
  ASSERT_EQ(chain.segments.size(), 2u);
  const double s = std::sqrt(0.5);
  // Interior tangent is the normalized mean of (1,0) and (0,1); handles are
  // 0.35 of the edge length.
  const CubicBezier& a = chain.segments[0];
  expect_vec_near(a.p0, {0, 0}, 0.0);
  expect_vec_near(a.c1, {3.5, 0}, 1e-12);
  expect_vec_near(a.c2, {10 - 3.5 * s, -3.5 * s}, 1e-12);
  expect_vec_near(a.p3, {10, 0}, 0.0);
  const CubicBezier& b = chain.segments[1];
  expect_vec_near(b.c1, {10 + 3.5 * s, 3.5 * s}, 1e-12);
  expect_vec_near(b.c2, {10, 6.5}, 1e-12);
}

TEST(BezierChain, StraightRouteIsStraight) {
  const Route r({{0, 0}, {5, 0}, {9, 0}});
  const BezierChain chain = route_to_bezier_chain(r);
  for (const CubicBezier& b : chain.segments) {
    for (double t = 0.0; t <= 1.0; t += 0.05) {
      EXPECT_NEAR(b.eval(t).y, 0.0, 1e-15);
      expect_vec_near(bezier_tangent(b, t), {1, 0}, 1e-12);
    }
  }
}

TEST(ClosestPoint, MatchesDenseBruteForce) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  const Route r({{-6, -5}, {-1, 2}, {4, 0}, {6, 7}});
  const BezierChain chain = route_to_bezier_chain(r);
  constexpr int kDense = 60000;
  for (int trial = 0; trial < 60; ++trial) {
    const Vec2 q{u(gen), u(gen)};
    double best = INFINITY;
    for (const CubicBezier& b : chain.segments) {
      for (int k = 0; k <= kDense; ++k) best = std::min(best, distance(b.eval(double(k) / kDense), q));
    }
    const ChainProjection p = closest_point_on_chain(chain, q);
    EXPECT_NEAR(p.distance, best, 1e-4) << q.x << "," << q.y;
    EXPECT_NEAR(distance(p.point, q), p.distance, 1e-12);
    EXPECT_NEAR(p.tangent.norm(), 1.0, 1e-12);
  }
}

TEST(ClosestPoint, PointOnCurveHasZeroDistance) {
  const BezierChain chain = route_to_bezier_chain(Route({{0, 0}, {4, 3}, {8, 0}}));
  const Vec2 on = chain.segments[1].eval(0.4);
  const ChainProjection p = closest_point_on_chain(chain, on);
  EXPECT_EQ(p.segment, 1u);
  EXPECT_NEAR(p.t, 0.4, 1e-6);
  EXPECT_NEAR(p.distance, 0.0, 1e-9);
  EXPECT_THROW(closest_point_on_chain(BezierChain{}, {0, 0}), Error);
}

TEST(PlanBezierCandidate, HandlesAlongHeadings) {
  const CubicBezier b = plan_bezier_candidate({{1, 1}, 0.0}, {{5, 5}, kPi / 2}, 2.0);
  expect_vec_near(b.c1, {3, 1}, 1e-12);
  expect_vec_near(b.c2, {5, 3}, 1e-12);
  EXPECT_THROW(plan_bezier_candidate({}, {}, 0.0), Error);
}

TEST(ApproximateLength, StraightAndQuarterCircle) {
  EXPECT_NEAR(approximate_length({{0, 0}, {1, 0}, {2, 0}, {3, 0}}), 3.0, 1e-12);
  // Standard cubic approximation of a unit quarter circle.
  const double k = 4.0 / 3.0 * (std::sqrt(2.0) - 1.0);
  EXPECT_NEAR(approximate_length({{1, 0}, {1, k}, {k, 1}, {0, 1}}, 2000), kPi / 2, 1e-3);
}

TEST(Trajectory, HeadingsFromPositions) {
  const Trajectory t = Trajectory::from_positions({{0, 0}, {1, 0}, {1, 0}, {1, 2}}, 0.3);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_DOUBLE_EQ(t.poses()[0].heading, 0.0);
  EXPECT_DOUBLE_EQ(t.poses()[1].heading, 0.0);  // zero-length segment keeps previous
  EXPECT_DOUBLE_EQ(t.poses()[2].heading, kPi / 2);
  EXPECT_DOUBLE_EQ(t.poses()[3].heading, kPi / 2);
  EXPECT_DOUBLE_EQ(t.length(), 3.0);
  expect_vec_near(t.point_at(2.0), {1, 1}, 1e-12);
  EXPECT_THROW(Trajectory({Pose{}}), Error);
}

}  // namespace
}  // namespace orfield
