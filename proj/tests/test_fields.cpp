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

#include "orfield/fields.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "oracles.hpp"

namespace orfield {
namespace {

constexpr auto kF = CellState::kFree;
constexpr auto kO = CellState::kObstacle;
constexpr auto kU = CellState::kUnknown;

// Builds a grid from rows given top (highest row index) first, so the
// literal reads like the map: '.' Free, '#' Obstacle, '?' Unknown.
OccupancyGrid parse_map(const std::vector<std::string>& rows, double res = 1.0) {
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(rows.front().size());
  OccupancyGrid occ(GridGeometry(w, h, res));
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const char ch = rows[h - 1 - r][c];
      occ(c, r) = ch == '#' ? kO : (ch == '?' ? kU : kF);
    }
  }
  return occ;
}

TEST(Edt, MatchesBruteForceOnRandomGrids) {
  std::mt19937_64 gen(41);
  std::uniform_int_distribution<int> side(1, 20);
  std::uniform_real_distribution<double> density(0.02, 0.6);
  for (int trial = 0; trial < 80; ++trial) {
    OccupancyGrid occ = oracle::random_occupancy(gen, side(gen), side(gen), density(gen), 0.1,
                                                 trial % 2 ? 0.2 : 1.0);
    occ.values()[0] = kO;
    occ.values().back() = kF;
    const ScalarGrid want = oracle::brute_force_edt(occ, [](CellState s) { return s != kF; });
    EXPECT_EQ(edt(occ).values().size(), want.values().size());
    const ScalarGrid got = edt(occ);
    for (std::size_t i = 0; i < want.values().size(); ++i) {
      ASSERT_EQ(got.values()[i], want.values()[i]) << "trial " << trial << " cell " << i;
    }
    const ScalarGrid inv_want = oracle::brute_force_edt(occ, [](CellState s) { return s == kF; });
    EXPECT_EQ(inverse_edt(occ), inv_want);
  }
}

TEST(Edt, DegenerateInputsThrow) {
  const OccupancyGrid free_grid(GridGeometry(4, 4, 1.0), kF);
  const OccupancyGrid blocked(GridGeometry(4, 4, 1.0), kO);
  try {
    edt(free_grid);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerate);
  }
  EXPECT_THROW(inverse_edt(blocked), Error);
  EXPECT_NO_THROW(edt(blocked));
}

TEST(Gradient, LinearRampPointsUphill) {
  const GridGeometry g(6, 5, 1.0);
  ScalarGrid s(g);
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 6; ++c) s(c, r) = 2.0 * c + 1.0 * r;
  }
  const OrField grad = gradient_direction(s);
  const Vec2 want = normalized_or_zero({2.0, 1.0});
  for (const Vec2& v : grad.values()) {
    EXPECT_NEAR(v.x, want.x, 1e-12);
    EXPECT_NEAR(v.y, want.y, 1e-12);
  }
  const OrField perp = perpendicular_direction(grad);
  EXPECT_NEAR(perp(2, 2).x, -want.y, 1e-12);
  EXPECT_NEAR(perp(2, 2).y, want.x, 1e-12);
}

TEST(Gradient, FlatFieldIsZeroAndSmallGridRejected) {
  const OrField grad = gradient_direction(ScalarGrid(GridGeometry(4, 4, 1.0), 3.0));
  for (const Vec2& v : grad.values()) EXPECT_EQ(v, Vec2{});
  EXPECT_THROW(gradient_direction(ScalarGrid(GridGeometry(2, 5, 1.0))), Error);
}

TEST(Frontiers, HandBuiltMap) {
  const OccupancyGrid occ = parse_map({
      "#######",
      "#.....?",
      "#.....?",
      "#.....#",
      "###.###",
  });
  const FrontierSet f = find_frontiers(occ, 1);
  ASSERT_EQ(f.size(), 2u);
  // Scan order: the border exit at the bottom comes first.
  EXPECT_EQ(f[0].cells, (std::vector<Cell>{{3, 0}}));
  EXPECT_EQ(f[0].representative, (Cell{3, 0}));
  EXPECT_EQ(f[1].cells, (std::vector<Cell>{{5, 2}, {5, 3}}));
  EXPECT_EQ(find_frontiers(occ, 2).size(), 1u);
}

TEST(Frontiers, RepresentativeIsNearestCentroid) {
  const OccupancyGrid occ = parse_map({
      "???????",
      ".......",
      "#######",
  });
  const FrontierSet f = find_frontiers(occ, 3);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].cells.size(), 7u);
  EXPECT_EQ(f[0].representative, (Cell{3, 1}));
}

TEST(Dijkstra, MatchesBellmanFord) {
  std::mt19937_64 gen(43);
  for (int trial = 0; trial < 40; ++trial) {
    OccupancyGrid occ = oracle::random_occupancy(gen, 14 + trial % 5, 11, 0.3, 0.05, 0.5);
    const Cell target{trial % 7, 5};
    occ(target) = kF;
    const DijkstraField tree = dijkstra_field(occ, target);
    const ScalarGrid want = oracle::bellman_ford(occ, target);
    const GridGeometry& g = occ.geometry();
    for (std::size_t i = 0; i < g.cell_count(); ++i) {
      const double d = tree.distance.values()[i];
      const double w = want.values()[i];
      if (std::isinf(w)) {
        EXPECT_TRUE(std::isinf(d));
        EXPECT_EQ(tree.parent[i], -1);
        EXPECT_EQ(tree.direction.values()[i], Vec2{});
        continue;
      }
      ASSERT_NEAR(d, w, 1e-9);
      const Cell c = g.cell_at(i);
      if (c == target) {
        EXPECT_EQ(tree.parent[i], -1);
        continue;
      }
      // Each parent is a Free 8-neighbor one edge closer to the target.
      const Cell p = g.cell_at(static_cast<std::size_t>(tree.parent[i]));
      EXPECT_LE(std::max(std::abs(p.col - c.col), std::abs(p.row - c.row)), 1);
      EXPECT_EQ(occ(p), kF);
      const double step = (p.col != c.col && p.row != c.row ? std::sqrt(2.0) : 1.0) * 0.5;
      EXPECT_NEAR(tree.distance(p) + step, d, 1e-9);
      EXPECT_NEAR(tree.direction.values()[i].norm(), 1.0, 1e-12);
    }
  }
}

TEST(Dijkstra, AxisAlignedTieBreak) {
  // (2,1) costs 1 + sqrt(2) through either (1,0) (diagonal last step) or
  // (1,1) (straight last step); the straight step wins.
  const OccupancyGrid occ(GridGeometry(3, 3, 1.0), kF);
  const DijkstraField tree = dijkstra_field(occ, {0, 0});
  EXPECT_EQ(tree.direction(1, 0), (Vec2{-1, 0}));
  EXPECT_NEAR(tree.direction(1, 1).x, -std::sqrt(0.5), 1e-12);
  EXPECT_EQ(tree.direction(2, 1), (Vec2{-1, 0}));
  EXPECT_EQ(tree.direction(1, 2), (Vec2{0, -1}));
  EXPECT_EQ(trace_path(tree, {2, 2}), (std::vector<Cell>{{2, 2}, {1, 1}, {0, 0}}));
}

TEST(Dijkstra, Errors) {
  OccupancyGrid occ(GridGeometry(3, 3, 1.0), kF);
  occ(1, 1) = kO;
  EXPECT_THROW(dijkstra_field(occ, {1, 1}), Error);
  EXPECT_THROW(dijkstra_field(occ, {5, 0}), Error);
  occ(0, 1) = kO;
  occ(1, 0) = kO;
  const DijkstraField tree = dijkstra_field(occ, {2, 2});
  try {
    trace_path(tree, {0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoPath);
  }
}

TEST(OrientationLabel, AgreesWithDijkstraAndFollowsCorridor) {
  const OccupancyGrid occ = parse_map({
      "############",
      "............",
      "............",
      "............",
      "############",
  });
  const Cell target{11, 2};
  const OrField label = orientation_label(occ, target);
  const DijkstraField tree = dijkstra_field(occ, target);
  for (std::size_t i = 0; i < label.values().size(); ++i) {
    if (occ.values()[i] != kF) continue;
    const Vec2 l = label.values()[i];
    const Vec2 d = tree.direction.values()[i];
    if (l == Vec2{} || d == Vec2{}) continue;
    EXPECT_GE(dot(l, d), 0.0);
  }
  // Near the walls the label runs along the corridor toward the target.
  EXPECT_NEAR(label(4, 1).x, 1.0, 1e-12);
  EXPECT_NEAR(label(4, 3).x, 1.0, 1e-12);
  // Walls point back into free space.
  EXPECT_NEAR(label(4, 0).y, 1.0, 1e-12);
  EXPECT_NEAR(label(4, 4).y, -1.0, 1e-12);
}

TEST(OrientationLabel, AllFreeFallsBackToDijkstra) {
  const OccupancyGrid occ(GridGeometry(5, 5, 1.0), kF);
  const OrField label = orientation_label(occ, {0, 0});
  EXPECT_EQ(label, dijkstra_field(occ, {0, 0}).direction);
}

TEST(InitialField, StraightRoute) {
  const GridGeometry g(21, 11, 0.5, {-5.0, -2.5});
  const InitialField f = initial_orfield(Route({{-6, 0}, {6, 0}}), g);
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      EXPECT_NEAR(f.orientation(c, r).x, 1.0, 1e-12);
      EXPECT_NEAR(f.distance(c, r), std::abs(g.cell_center({c, r}).y), 1e-9);
    }
  }
}

TEST(NearestField, PicksClosestEdge) {
  const GridGeometry g(11, 11, 1.0, {-5, -5});
  const OrField f = nearest_edge_orfield(Route({{-5, 0}, {0, 0}, {0, 5}}), g);
  EXPECT_EQ(f(0, 5), (Vec2{1, 0}));    // (-5, 0)
  EXPECT_EQ(f(5, 10), (Vec2{0, 1}));   // (0, 5)
}

TEST(MakeField, VariantsAndErrors) {
  const OccupancyGrid occ = parse_map({"#####", ".....", ".....", "#####"});
  const Route route({{0, 1.5}, {4, 1.5}});
  FieldInputs in;
  EXPECT_THROW(make_field(FieldVariant::kInitialOrField, in), Error);
  in.route = &route;
  EXPECT_THROW(make_field(FieldVariant::kInitialOrField, in), Error);  // no geometry
  in.geometry = occ.geometry();
  EXPECT_EQ(make_field(FieldVariant::kInitialOrField, in).geometry(), occ.geometry());
  EXPECT_THROW(make_field(FieldVariant::kGradient, in), Error);
  in.occupancy = &occ;
  EXPECT_THROW(make_field(FieldVariant::kDijkstra, in), Error);  // no target
  in.target = Cell{4, 1};
  EXPECT_EQ(make_field(FieldVariant::kDijkstra, in), make_field(FieldVariant::kDijkstraFull, in));
  EXPECT_EQ(make_field(FieldVariant::kGradient, in), orientation_label(occ, {4, 1}));
  for (const auto* name : {"initial", "nearest", "dijkstra", "gradient", "dijkstra-full", "gradient-full"}) {
    const auto v = parse_field_variant(name);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(to_string(*v), name);
  }
  EXPECT_FALSE(parse_field_variant("Gradient").has_value());
}

TEST(AugmentPath, ShiftsInteriorPointsInsideFreeSpace) {
  OccupancyGrid occ(GridGeometry(120, 21, 0.25, {0, -2.5}), kO);
  for (int c = 0; c < 120; ++c) {
    for (int r = 4; r <= 16; ++r) occ(c, r) = kF;
  }
  std::vector<Cell> path;
  for (int c = 0; c < 120; ++c) path.push_back({c, 10});
  const Route a = augment_path(occ, path, 7, 1.0);
  const Route b = augment_path(occ, path, 7, 1.0);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.waypoints().front(), occ.geometry().cell_center(path.front()));
  EXPECT_EQ(a.waypoints().back(), occ.geometry().cell_center(path.back()));
  EXPECT_GE(a.size(), 6u);  // 29.75 m at 5 m spacing
  for (const Vec2& w : a.waypoints()) {
    EXPECT_LE(std::abs(w.y), 1.0 + 1e-12);
    EXPECT_EQ(occ(*occ.geometry().world_to_cell(w)), kF);
  }
  EXPECT_THROW(augment_path(occ, {path[0]}, 1, 1.0), Error);
  EXPECT_THROW(augment_path(occ, path, 1, -1.0), Error);
}

}  // namespace
}  // namespace orfield
