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

#include <algorithm>
#include <cmath>
#include <limits>

namespace orfield {

GridGeometry::GridGeometry(int width, int height, double resolution, Vec2 origin)
    : width_(width), height_(height), resolution_(resolution), origin_(origin) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument, "grid width and height must be >= 1");
  }
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw Error(ErrorCode::kInvalidArgument, "grid resolution must be positive");
  }
  if (!std::isfinite(origin.x) || !std::isfinite(origin.y)) {
    throw Error(ErrorCode::kInvalidArgument, "grid origin must be finite");
  }
}

bool GridGeometry::contains_point(Vec2 p) const {
  const Vec2 u = to_grid_coords(p);
  return u.x >= 0.0 && u.y >= 0.0 && u.x < width_ && u.y < height_;
}

std::optional<Cell> GridGeometry::world_to_cell(Vec2 p) const {
  if (!contains_point(p)) return std::nullopt;
  const Vec2 u = to_grid_coords(p);
  const Cell c{std::clamp(static_cast<int>(std::floor(u.x)), 0, width_ - 1),
               std::clamp(static_cast<int>(std::floor(u.y)), 0, height_ - 1)};
  return c;
}

BevGrid rasterize_points(std::span<const LidarPoint> points, const GridGeometry& g) {
  BevGrid bev(g);
  std::vector<double> intensity_sum(g.cell_count(), 0.0);
  for (const LidarPoint& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z) ||
        !std::isfinite(p.intensity)) {
      throw Error(ErrorCode::kInvalidArgument, "point coordinates must be finite");
    }
    const auto cell = g.world_to_cell({p.x, p.y});
    if (!cell) continue;
    BevCell& b = bev(*cell);
    const std::size_t i = g.index(*cell);
    b.max_height = b.count == 0.0 ? p.z : std::max(b.max_height, p.z);
    b.count += 1.0;
    intensity_sum[i] += p.intensity;
  }
  auto values = bev.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].count > 0.0) values[i].intensity = intensity_sum[i] / values[i].count;
  }
  return bev;
}

std::vector<Cell> supercover_cells(const GridGeometry& g, Vec2 a, Vec2 b) {
  if (!g.contains_point(a) || !g.contains_point(b)) {
    throw Error(ErrorCode::kOutOfRange, "segment endpoint outside raster extent");
  }
  const Vec2 ga = g.to_grid_coords(a);
  const Vec2 gb = g.to_grid_coords(b);
  const auto cell_of = [&g](Vec2 u) {
    return Cell{std::clamp(static_cast<int>(std::floor(u.x)), 0, g.width() - 1),
                std::clamp(static_cast<int>(std::floor(u.y)), 0, g.height() - 1)};
  };

  Cell cur = cell_of(ga);
  const Cell end = cell_of(gb);
  std::vector<Cell> out{cur};
  if (cur == end) return out;

  const auto push = [&](Cell c) {
    if (!g.contains(c)) return;
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };

  const double dx = gb.x - ga.x;
  const double dy = gb.y - ga.y;
  const int sx = dx > 0.0 ? 1 : (dx < 0.0 ? -1 : 0);
  const int sy = dy > 0.0 ? 1 : (dy < 0.0 ? -1 : 0);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double t_delta_x = sx != 0 ? 1.0 / std::abs(dx) : kInf;
  const double t_delta_y = sy != 0 ? 1.0 / std::abs(dy) : kInf;
  double t_max_x = sx > 0 ? (cur.col + 1 - ga.x) / dx : (sx < 0 ? (ga.x - cur.col) / -dx : kInf);
  double t_max_y = sy > 0 ? (cur.row + 1 - ga.y) / dy : (sy < 0 ? (ga.y - cur.row) / -dy : kInf);

  // Parameter-space tolerance for treating a crossing as an exact corner hit.
  constexpr double kCornerTie = 1e-9;
  int remaining = std::abs(end.col - cur.col) + std::abs(end.row - cur.row);
  while (cur != end && remaining > 0) {
    if (std::abs(t_max_x - t_max_y) <= kCornerTie && remaining >= 2) {
      push({cur.col + sx, cur.row});
      push({cur.col, cur.row + sy});
      cur.col += sx;
      cur.row += sy;
      t_max_x += t_delta_x;
      t_max_y += t_delta_y;
      remaining -= 2;
    } else if (t_max_x < t_max_y) {
      cur.col += sx;
      t_max_x += t_delta_x;
      --remaining;
    } else {
      cur.row += sy;
      t_max_y += t_delta_y;
      --remaining;
    }
    push(cur);
  }
  push(end);
  return out;
}

OrField uniform_filter(const OrField& field, int radius) {
  if (radius < 0) throw Error(ErrorCode::kInvalidArgument, "filter radius must be >= 0");
  if (radius == 0) return field;
  const int w = field.width();
  const int h = field.height();

  // Separable box sums; each output is divided by the clipped window area.
  std::vector<Vec2> row_sum(field.geometry().cell_count());
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      Vec2 s;
      for (int k = std::max(0, c - radius); k <= std::min(w - 1, c + radius); ++k) {
        s += field(k, r);
      }
      row_sum[static_cast<std::size_t>(r) * w + c] = s;
    }
  }
  OrField out(field.geometry());
  for (int r = 0; r < h; ++r) {
    const int r0 = std::max(0, r - radius);
    const int r1 = std::min(h - 1, r + radius);
    for (int c = 0; c < w; ++c) {
      const int c0 = std::max(0, c - radius);
      const int c1 = std::min(w - 1, c + radius);
      Vec2 s;
      for (int k = r0; k <= r1; ++k) s += row_sum[static_cast<std::size_t>(k) * w + c];
      out(c, r) = s / static_cast<double>((r1 - r0 + 1) * (c1 - c0 + 1));
    }
  }
  return out;
}

OrField downsample_field(const OrField& field, int factor) {
  if (factor < 1) throw Error(ErrorCode::kInvalidArgument, "downsample factor must be >= 1");
  if (factor == 1) return field;
  const GridGeometry& g = field.geometry();
  const int w = (g.width() + factor - 1) / factor;
  const int h = (g.height() + factor - 1) / factor;
  const double offset = 0.5 * (factor - 1) * g.resolution();
  const GridGeometry coarse(w, h, g.resolution() * factor,
                            {g.origin().x + offset, g.origin().y + offset});
  OrField out(coarse);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      Vec2 s;
      int n = 0;
      for (int rr = r * factor; rr < std::min(g.height(), (r + 1) * factor); ++rr) {
        for (int cc = c * factor; cc < std::min(g.width(), (c + 1) * factor); ++cc) {
          s += field(cc, rr);
          ++n;
        }
      }
      out(c, r) = s / static_cast<double>(n);
    }
  }
  return out;
}

Vec2 sample_nearest(const OrField& field, Vec2 p) {
  const auto cell = field.geometry().world_to_cell(p);
  return cell ? field(*cell) : Vec2{};
}

}  // namespace orfield
