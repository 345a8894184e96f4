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

#include "orfield/planners.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace orfield {
namespace {

constexpr double kHalfPi = kPi / 2;

// Field of unit vectors along +x on a 40 m x 20 m raster centered on 0.
OrField uniform_x_field(double res = 0.5) {
  const int w = static_cast<int>(40 / res);
  const int h = static_cast<int>(20 / res);
  return OrField(GridGeometry(w, h, res, {-20 + res / 2, -10 + res / 2}), Vec2{1, 0});
}

TEST(CellEnergy, Formula) {
  EXPECT_DOUBLE_EQ(cell_energy({1, 0}, {1, 0}), 0.0);
  EXPECT_DOUBLE_EQ(cell_energy({1, 0}, {0, 1}), kPi / 4);
  EXPECT_DOUBLE_EQ(cell_energy({1, 0}, {-1, 0}), kHalfPi);
  EXPECT_DOUBLE_EQ(cell_energy({}, {1, 0}), kHalfPi);
  // Half confidence, aligned: (1 - 0.5) * pi / 2.
  EXPECT_DOUBLE_EQ(cell_energy({0.5, 0}, {3, 0}), kPi / 4);
  // Half confidence, opposed: 0.5 * pi / 2 + 0.5 * pi / 2.
  EXPECT_DOUBLE_EQ(cell_energy({0, -0.5}, {0, 2}), kHalfPi);
}

TEST(EdgeEnergy, UniformFieldEqualsCellCountTimesHalfAngle) {
  std::mt19937_64 gen(61);
  const OrField field = uniform_x_field();
  std::uniform_real_distribution<double> ux(-19.9, 19.9), uy(-9.9, 9.9);
  for (int i = 0; i < 100; ++i) {
    const Vec2 a{ux(gen), uy(gen)}, b{ux(gen), uy(gen)};
    const double count = static_cast<double>(oracle::cells_touched(field.geometry(), a, b).size());
    const double dtheta = oracle::angle_between({1, 0}, b - a);
    EXPECT_NEAR(edge_energy(field, a, b), count * dtheta / 2, 1e-9);
  }
  EXPECT_THROW(edge_energy(field, {1, 1}, {1, 1}), Error);
  EXPECT_THROW(edge_energy(field, {0, 0}, {30, 0}), Error);
}

TEST(CurveEnergy, StraightCurves) {
  const OrField field = uniform_x_field(1.0);
  const CubicBezier along{{-5, 0.3}, {-2, 0.3}, {2, 0.3}, {5, 0.3}};
  EXPECT_NEAR(curve_energy(field, along), 0.0, 1e-12);
  const CubicBezier against{along.p3, along.c2, along.c1, along.p0};
  // x from 5 to -5 at y = 0.3 with res 1 and centered cells visits 11 cells.
  EXPECT_NEAR(curve_energy(field, against), 11 * kHalfPi, 1e-12);
  // Running off the raster keeps charging pi/2 per virtual cell.
  const CubicBezier out{{18.2, 0.3}, {20, 0.3}, {22, 0.3}, {23.9, 0.3}};
  EXPECT_NEAR(curve_energy(field, out), 4 * kHalfPi, 1e-12);
}

PlannerParams reference_params() {
  PlannerParams p;
  p.step_size = 1.0;
  p.neighbor_radius = 2.0;
  p.iterations = 600;
  p.planning_radius = 8.0;
  p.rng_seed = 5;
  return p;
}

TEST(FieldRrtStar, TreeInvariantsHold) {
  const OrField field = uniform_x_field();
  FieldRrtStar planner(field, nullptr, {{0, 0}, 0.0}, reference_params());
  for (int i = 0; i < 600; ++i) planner.step();
  const RrtTree& t = planner.tree();
  ASSERT_GT(t.size(), 50u);
  EXPECT_EQ(t.parent[0], -1);
  for (std::size_t i = 1; i < t.size(); ++i) {
    const int p = t.parent[i];
    ASSERT_GE(p, 0);
    const auto pu = static_cast<std::size_t>(p);
    EXPECT_NEAR(t.edge_cost[i], edge_energy(planner.planning_field(), t.position[pu], t.position[i]), 1e-9);
    EXPECT_NEAR(t.energy[i], t.energy[pu] + t.edge_cost[i], 1e-9);
    EXPECT_NEAR(t.path_length[i], t.path_length[pu] + distance(t.position[pu], t.position[i]), 1e-9);
    EXPECT_EQ(std::count(t.children[pu].begin(), t.children[pu].end(), static_cast<int>(i)), 1);
    // Root reachable without cycles.
    EXPECT_EQ(t.path_to(static_cast<int>(i)).front(), 0);
    EXPECT_LE(t.path_to(static_cast<int>(i)).size(), t.size());
  }
}

TEST(FieldRrtStar, IncumbentEnergyNeverIncreases) {
  const OrField field = uniform_x_field();
  PlannerParams params = reference_params();
  params.rng_seed = 9;
  FieldRrtStar planner(field, nullptr, {{0, 0}, 0.0}, params);
  double last = INFINITY;
  bool found = false;
  for (int i = 0; i < 800; ++i) {
    planner.step();
    const PlanResult r = planner.result();
    if (r.degraded) {
      EXPECT_FALSE(found);
      continue;
    }
    found = true;
    EXPECT_LE(r.energy, last);
    EXPECT_GE(r.trajectory.length(), params.planning_radius - 1e-9);
    last = r.energy;
  }
  EXPECT_TRUE(found);
}

TEST(FieldRrtStar, DeterministicPerSeed) {
  const OrField field = uniform_x_field();
  const PlannerParams params = reference_params();
  const PlanResult a = field_rrt_star(field, nullptr, {{0, 0}, 0.0}, params);
  const PlanResult b = field_rrt_star(field, nullptr, {{0, 0}, 0.0}, params);
  EXPECT_EQ(a.trajectory, b.trajectory);
  EXPECT_EQ(a.energy, b.energy);
  PlannerParams other = params;
  other.rng_seed = 6;
  EXPECT_FALSE(field_rrt_star(field, nullptr, {{0, 0}, 0.0}, other).trajectory == a.trajectory);
}

TEST(FieldRrtStar, FollowsUniformField) {
  const OrField field = uniform_x_field();
  PlannerParams params = reference_params();
  params.iterations = 1000;
  const PlanResult r = field_rrt_star(field, nullptr, {{0, 0}, 0.0}, params);
  ASSERT_FALSE(r.degraded);
  EXPECT_GT(r.trajectory.back().position.x, 6.0);
}

TEST(FieldRrtStar, DegradedWhenRadiusUnreachable) {
  const OrField field(GridGeometry(10, 10, 0.5, {-2.25, -2.25}), Vec2{1, 0});
  PlannerParams params = reference_params();
  params.planning_radius = 50.0;
  params.iterations = 200;
  const PlanResult r = field_rrt_star(field, nullptr, {{0, 0}, 0.0}, params);
  EXPECT_TRUE(r.degraded);
  EXPECT_EQ(r.eligible_leaves, 0u);
  EXPECT_GT(r.trajectory.size(), 1u);
}

TEST(FieldRrtStar, RespectsObstacles) {
  const OrField field = uniform_x_field();
  OccupancyGrid occ(field.geometry(), CellState::kFree);
  // Wall across the field at x = 4 with a gap at y in [5, 7].
  for (int r = 0; r < occ.height(); ++r) {
    const double y = occ.geometry().cell_center({0, r}).y;
    if (y < 5 || y > 7) occ(*occ.geometry().world_to_cell({4, y})) = CellState::kObstacle;
  }
  PlannerParams params = reference_params();
  params.iterations = 1500;
  FieldRrtStar planner(field, &occ, {{0, 0}, 0.0}, params);
  for (int i = 0; i < params.iterations; ++i) planner.step();
  const RrtTree& t = planner.tree();
  for (std::size_t i = 1; i < t.size(); ++i) {
    const Vec2 a = t.position[static_cast<std::size_t>(t.parent[i])];
    for (const Cell& c : oracle::cells_touched(occ.geometry(), a, t.position[i])) {
      EXPECT_NE(occ(c), CellState::kObstacle);
    }
  }
}

TEST(FieldRrtStar, StartOutsideFieldThrows) {
  EXPECT_THROW(FieldRrtStar(uniform_x_field(), nullptr, {{99, 0}, 0.0}, reference_params()), Error);
  PlannerParams bad = reference_params();
  bad.neighbor_radius = 0.5;
  EXPECT_THROW(FieldRrtStar(uniform_x_field(), nullptr, {{0, 0}, 0.0}, bad), Error);
}

TEST(FieldBezier, PicksExhaustiveMinimum) {
  // Field turning left: +x below y = 2, +y above.
  OrField field = uniform_x_field();
  for (int r = 0; r < field.height(); ++r) {
    for (int c = 0; c < field.width(); ++c) {
      const Vec2 p = field.geometry().cell_center({c, r});
      field(c, r) = p.x > 3 ? Vec2{0, 1} : Vec2{1, 0};
    }
  }
  PlannerParams params;
  params.planning_radius = 8.0;
  params.handle = 2.4;
  params.candidate_count = 36;
  const OrField smoothed = uniform_filter(field, params.smoothing_radius);
  const auto candidates = field_bezier_candidates(smoothed, {{0, 0}, 0.0}, params);
  ASSERT_FALSE(candidates.empty());
  double best = INFINITY;
  for (const auto& c : candidates) best = std::min(best, c.energy);
  const PlanResult r = field_bezier(field, {{0, 0}, 0.0}, params);
  EXPECT_EQ(r.energy, best);
  EXPECT_NEAR(distance(r.trajectory.back().position, {0, 0}), params.planning_radius, 1e-9);
  EXPECT_GT(r.trajectory.back().position.y, 0.0);
}

TEST(FieldBezier, UniformFieldGoesStraightWithZeroEnergy) {
  PlannerParams params;
  params.planning_radius = 10.0;
  params.handle = 3.0;
  const PlanResult r = field_bezier(uniform_x_field(), {{0, 0}, 0.4}, params);
  EXPECT_NEAR(r.energy, 0.0, 1e-12);
  EXPECT_NEAR(r.trajectory.back().position.x, 10.0, 1e-9);
  EXPECT_NEAR(r.trajectory.back().position.y, 0.0, 1e-9);
  for (const Pose& p : r.trajectory.poses()) EXPECT_NEAR(p.heading, 0.0, 1e-9);
  // One sample per 0.25 m of curve length, uniform in the curve parameter.
  EXPECT_EQ(r.trajectory.size(), 41u);
}

TEST(FieldBezier, NoEndpointInsideThrows) {
  PlannerParams params;
  params.planning_radius = 100.0;
  try {
    field_bezier(uniform_x_field(), {{0, 0}, 0.0}, params);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoPath);
  }
}

TEST(PointRrtStar, ReachesGoalThroughGapWithoutCollisions) {
  const GridGeometry g(80, 40, 0.5, {-19.75, -9.75});
  OccupancyGrid occ(g, CellState::kFree);
  for (int r = 0; r < g.height(); ++r) {
    const double y = g.cell_center({0, r}).y;
    if (y < 4 || y > 7) occ(*g.world_to_cell({3, y})) = CellState::kObstacle;
  }
  occ(*g.world_to_cell({-5, 5})) = CellState::kUnknown;
  PlannerParams params;
  params.iterations = 4000;
  params.planning_radius = 12.0;
  params.goal_bias = 0.1;
  params.rng_seed = 3;
  const Vec2 goal{10, 0};
  const PlanResult r = point_rrt_star(occ, {{0, 0}, 0.0}, goal, params);
  EXPECT_EQ(r.trajectory.back().position, goal);
  const auto pts = r.trajectory.positions();
  double len = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    len += distance(pts[i - 1], pts[i]);
    for (const Cell& c : oracle::cells_touched(g, pts[i - 1], pts[i])) {
      EXPECT_EQ(occ(c), CellState::kFree) << c.col << "," << c.row;
    }
  }
  EXPECT_NEAR(r.energy, len, 1e-9);
  // The detour over the wall is longer than the straight line.
  EXPECT_GT(len, 10.0);
}

TEST(PointRrtStar, RejectsBlockedEndpoints) {
  OccupancyGrid occ(GridGeometry(10, 10, 1.0), CellState::kFree);
  occ(5, 5) = CellState::kObstacle;
  EXPECT_THROW(point_rrt_star(occ, {{5, 5}, 0}, {1, 1}, PlannerParams{}), Error);
  EXPECT_THROW(point_rrt_star(occ, {{1, 1}, 0}, {5, 5}, PlannerParams{}), Error);
}

TEST(PlannerNames, RoundTrip) {
  for (const auto* n : {"field-rrt", "field-bezier", "point-rrt"}) {
    EXPECT_EQ(to_string(*parse_planner(n)), n);
  }
  EXPECT_FALSE(parse_planner("rrt").has_value());
}

}  // namespace
}  // namespace orfield
