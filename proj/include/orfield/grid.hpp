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

// Raster containers and world/grid coordinate handling.
//
// Cells are addressed as (col, row). World x maps to col and world y to row;
// the geometry origin is the world position of the center of cell (0,0), so
// cell c covers [origin + (c - 1/2) res, origin + (c + 1/2) res) on each axis.
// Storage is row-major.

#ifndef ORFIELD_GRID_HPP_
#define ORFIELD_GRID_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "orfield/error.hpp"
#include "orfield/vec2.hpp"

namespace orfield {

struct Cell {
  int col = 0;
  int row = 0;

  friend constexpr bool operator==(const Cell&, const Cell&) = default;
  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

class GridGeometry {
 public:
  GridGeometry(int width, int height, double resolution, Vec2 origin = {});

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  Vec2 origin() const { return origin_; }
  std::size_t cell_count() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  bool contains(Cell c) const {
    return c.col >= 0 && c.row >= 0 && c.col < width_ && c.row < height_;
  }
  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.col);
  }
  Cell cell_at(std::size_t index) const {
    return {static_cast<int>(index % static_cast<std::size_t>(width_)),
            static_cast<int>(index / static_cast<std::size_t>(width_))};
  }

  Vec2 cell_center(Cell c) const {
    return {origin_.x + c.col * resolution_, origin_.y + c.row * resolution_};
  }

  // Continuous grid coordinates: cell c spans [c, c+1) on each axis.
  Vec2 to_grid_coords(Vec2 p) const {
    return {(p.x - origin_.x) / resolution_ + 0.5, (p.y - origin_.y) / resolution_ + 0.5};
  }

  // True when p lies inside the raster extent.
  bool contains_point(Vec2 p) const;

  // Cell whose center is nearest to p; nullopt outside the raster extent.
  std::optional<Cell> world_to_cell(Vec2 p) const;

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;

 private:
  int width_;
  int height_;
  double resolution_;
  Vec2 origin_;
};

inline std::optional<Cell> world_to_cell(const GridGeometry& g, Vec2 p) {
  return g.world_to_cell(p);
}

template <typename T>
class Raster {
 public:
  using value_type = T;

  explicit Raster(GridGeometry geometry, T fill = T{})
      : geometry_(geometry), values_(geometry.cell_count(), fill) {}

  Raster(GridGeometry geometry, std::vector<T> values)
      : geometry_(geometry), values_(std::move(values)) {
    if (values_.size() != geometry_.cell_count()) {
      throw Error(ErrorCode::kInvalidArgument, "raster value count does not match geometry");
    }
  }

  const GridGeometry& geometry() const { return geometry_; }
  int width() const { return geometry_.width(); }
  int height() const { return geometry_.height(); }

  T& operator()(Cell c) { return values_[geometry_.index(c)]; }
  const T& operator()(Cell c) const { return values_[geometry_.index(c)]; }
  T& operator()(int col, int row) { return (*this)(Cell{col, row}); }
  const T& operator()(int col, int row) const { return (*this)(Cell{col, row}); }

  const T& at(Cell c) const {
    if (!geometry_.contains(c)) throw Error(ErrorCode::kOutOfRange, "cell outside raster");
    return (*this)(c);
  }

  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  GridGeometry geometry_;
  std::vector<T> values_;
};

enum class CellState : std::uint8_t { kFree = 0, kObstacle = 1, kUnknown = 2 };

struct BevCell {
  double intensity = 0.0;   // mean intensity of the points in the cell
  double max_height = 0.0;  // meters
  double count = 0.0;       // number of points

  friend bool operator==(const BevCell&, const BevCell&) = default;
};

using ScalarGrid = Raster<double>;
using OrField = Raster<Vec2>;
using OccupancyGrid = Raster<CellState>;
using BevGrid = Raster<BevCell>;

struct LidarPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double intensity = 0.0;
};

// Bird's-eye-view features: mean intensity, max height, point count per
// cell. Points outside the extent are dropped; empty cells stay (0,0,0).
BevGrid rasterize_points(std::span<const LidarPoint> points, const GridGeometry& g);

// Every cell whose closed area the segment ab touches, ordered from a to b.
// A segment passing exactly through a cell corner also yields both cells
// sharing that corner. Throws kOutOfRange if an endpoint leaves the extent.
std::vector<Cell> supercover_cells(const GridGeometry& g, Vec2 a, Vec2 b);

// Box mean over a (2r+1)^2 window; the window shrinks at the raster border.
OrField uniform_filter(const OrField& field, int radius);

// Averages factor x factor blocks into a coarser raster that covers the same
// area (the last block row/column may be partial).
OrField downsample_field(const OrField& field, int factor);

// Nearest-cell lookup; zero vector outside the extent.
Vec2 sample_nearest(const OrField& field, Vec2 p);

}  // namespace orfield

#endif  // ORFIELD_GRID_HPP_
