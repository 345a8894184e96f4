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

#include "orfield/grid.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "oracles.hpp"

namespace orfield {
namespace {

TEST(GridGeometry, RejectsInvalidShapes) {
  EXPECT_THROW(GridGeometry(0, 4, 1.0), Error);
  EXPECT_THROW(GridGeometry(4, -1, 1.0), Error);
  EXPECT_THROW(GridGeometry(4, 4, 0.0), Error);
  EXPECT_THROW(GridGeometry(4, 4, std::nan("")), Error);
}

TEST(GridGeometry, CellCenterRoundTrip) {
  const GridGeometry g(7, 5, 0.25, {-1.0, 3.0});
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      const auto back = g.world_to_cell(g.cell_center({c, r}));
      ASSERT_TRUE(back.has_value());
      EXPECT_EQ(*back, (Cell{c, r}));
      EXPECT_EQ(g.cell_at(g.index({c, r})), (Cell{c, r}));
    }
  }
}

TEST(GridGeometry, ExtentIsHalfOpen) {
  const GridGeometry g(4, 4, 1.0);
  // Cell 0 spans [-0.5, 0.5); the last cell ends at 3.5 exclusive.
  EXPECT_TRUE(g.contains_point({-0.5, -0.5}));
  EXPECT_FALSE(g.contains_point({3.5, 0.0}));
  EXPECT_FALSE(g.world_to_cell({-0.51, 0.0}).has_value());
  EXPECT_EQ(*g.world_to_cell({0.49, 2.5}), (Cell{0, 3}));
}

TEST(Raster, ValueCountMustMatch) {
  EXPECT_THROW(ScalarGrid(GridGeometry(2, 2, 1.0), std::vector<double>(3)), Error);
  ScalarGrid s(GridGeometry(2, 2, 1.0), std::vector<double>{1, 2, 3, 4});
  EXPECT_EQ(s(1, 0), 2.0);
  EXPECT_EQ(s(0, 1), 3.0);
  EXPECT_THROW(s.at({2, 0}), Error);
}

TEST(Supercover, MatchesClippingOracleOnRandomSegments) {
  std::mt19937_64 gen(11);
  const GridGeometry g(24, 18, 0.5, {2.0, -3.0});
  std::uniform_real_distribution<double> ux(2.0 - 0.25, 2.0 + 23.5 * 0.5);
  std::uniform_real_distribution<double> uy(-3.0 - 0.25, -3.0 + 17.5 * 0.5);
  for (int trial = 0; trial < 300; ++trial) {
    const Vec2 a{ux(gen), uy(gen)};
    const Vec2 b{ux(gen), uy(gen)};
    const std::vector<Cell> cells = supercover_cells(g, a, b);
    const std::set<Cell> got(cells.begin(), cells.end());
    ASSERT_EQ(got.size(), cells.size()) << "duplicate cells";
    EXPECT_EQ(got, oracle::cells_touched(g, a, b)) << "trial " << trial;
    EXPECT_EQ(cells.front(), *g.world_to_cell(a));
    EXPECT_EQ(cells.back(), *g.world_to_cell(b));
    // Every densely sampled cell is covered.
    for (const Cell& c : oracle::sampled_cells(g, a, b, 4000)) EXPECT_TRUE(got.count(c));
  }
}

TEST(Supercover, OrderedFromStartToEnd) {
  const GridGeometry g(20, 20, 1.0);
  const Vec2 a{0.3, 1.7};
  const Vec2 b{17.1, 9.2};
  const std::vector<Cell> cells = supercover_cells(g, a, b);
  const Vec2 d = b - a;
  double last = -1.0;
  for (const Cell& c : cells) {
    // Entry parameter of each cell must not decrease.
    const Vec2 lo{c.col - 0.5, c.row - 0.5};
    double t_enter = 0.0;
    t_enter = std::max(t_enter, ((d.x > 0 ? lo.x : lo.x + 1.0) - a.x) / d.x);
    t_enter = std::max(t_enter, ((d.y > 0 ? lo.y : lo.y + 1.0) - a.y) / d.y);
    EXPECT_GE(t_enter, last - 1e-12);
    last = t_enter;
  }
}

TEST(Supercover, CornerCrossingIncludesBothSideCells) {
  const GridGeometry g(4, 4, 1.0);
  const std::vector<Cell> cells = supercover_cells(g, {0.0, 0.0}, {2.0, 2.0});
  const std::set<Cell> got(cells.begin(), cells.end());
  const std::set<Cell> want{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {2, 2}};
  EXPECT_EQ(got, want);
}

TEST(Supercover, SingleCellAndAxisAligned) {
  const GridGeometry g(5, 5, 1.0);
  EXPECT_EQ(supercover_cells(g, {1.1, 1.2}, {1.3, 0.9}), (std::vector<Cell>{{1, 1}}));
  EXPECT_EQ(supercover_cells(g, {0.0, 2.0}, {3.0, 2.0}),
            (std::vector<Cell>{{0, 2}, {1, 2}, {2, 2}, {3, 2}}));
}

TEST(Supercover, EndpointOutsideThrows) {
  const GridGeometry g(5, 5, 1.0);
  try {
    supercover_cells(g, {0.0, 0.0}, {9.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
}

OrField random_field(std::mt19937_64& gen, const GridGeometry& g) {
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  OrField f(g);
  for (auto& v : f.values()) v = {u(gen), u(gen)};
  return f;
}

TEST(UniformFilter, MatchesBruteForceClippedWindow) {
  std::mt19937_64 gen(3);
  const GridGeometry g(9, 6, 1.0);
  const OrField f = random_field(gen, g);
  for (int radius : {0, 1, 2, 5}) {
    const OrField out = uniform_filter(f, radius);
    for (int r = 0; r < g.height(); ++r) {
      for (int c = 0; c < g.width(); ++c) {
        Vec2 s;
        int n = 0;
        for (int rr = 0; rr < g.height(); ++rr) {
          for (int cc = 0; cc < g.width(); ++cc) {
            if (std::abs(rr - r) <= radius && std::abs(cc - c) <= radius) {
              s += f(cc, rr);
              ++n;
            }
          }
        }
        EXPECT_NEAR(out(c, r).x, s.x / n, 1e-12);
        EXPECT_NEAR(out(c, r).y, s.y / n, 1e-12);
      }
    }
  }
  EXPECT_THROW(uniform_filter(f, -1), Error);
}

TEST(DownsampleField, BlockMeansAndGeometry) {
  std::mt19937_64 gen(5);
  const GridGeometry g(7, 5, 0.5, {1.0, 2.0});
  const OrField f = random_field(gen, g);
  const OrField d = downsample_field(f, 2);
  EXPECT_EQ(d.width(), 4);
  EXPECT_EQ(d.height(), 3);
  EXPECT_DOUBLE_EQ(d.geometry().resolution(), 1.0);
  // Coarse cell (0,0) covers fine cells (0..1, 0..1); its center is their mean.
  EXPECT_DOUBLE_EQ(d.geometry().origin().x, 1.25);
  EXPECT_DOUBLE_EQ(d.geometry().origin().y, 2.25);
  const Vec2 m = (f(2, 2) + f(3, 2) + f(2, 3) + f(3, 3)) / 4.0;
  EXPECT_NEAR(d(1, 1).x, m.x, 1e-12);
  EXPECT_NEAR(d(1, 1).y, m.y, 1e-12);
  // Partial corner block holds a single fine cell.
  EXPECT_EQ(d(3, 2), f(6, 4));
  EXPECT_EQ(downsample_field(f, 1), f);
  EXPECT_THROW(downsample_field(f, 0), Error);
}

TEST(RasterizePoints, MeanIntensityMaxHeightCount) {
  const GridGeometry g(3, 3, 1.0);
  const std::vector<LidarPoint> pts{{0.1, 0.1, 0.5, 2.0},
                                    {-0.2, 0.3, 1.5, 4.0},
                                    {2.0, 2.0, -0.3, 1.0},
                                    {10.0, 10.0, 9.0, 9.0}};
  const BevGrid bev = rasterize_points(pts, g);
  EXPECT_EQ(bev(0, 0), (BevCell{3.0, 1.5, 2.0}));
  EXPECT_EQ(bev(2, 2), (BevCell{1.0, -0.3, 1.0}));
  EXPECT_EQ(bev(1, 1), BevCell{});
  const std::vector<LidarPoint> bad{{std::nan(""), 0, 0, 0}};
  EXPECT_THROW(rasterize_points(bad, g), Error);
}

TEST(SampleNearest, ZeroOutsideExtent) {
  OrField f(GridGeometry(2, 2, 1.0), Vec2{1.0, 0.0});
  EXPECT_EQ(sample_nearest(f, {0.2, 0.9}), (Vec2{1.0, 0.0}));
  EXPECT_EQ(sample_nearest(f, {5.0, 0.0}), Vec2{});
}

}  // namespace
}  // namespace orfield
