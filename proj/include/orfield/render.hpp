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

// Static SVG rendering of occupancy grids, fields and trajectories.

#ifndef ORFIELD_RENDER_HPP_
#define ORFIELD_RENDER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "orfield/grid.hpp"
#include "orfield/trajectory.hpp"

namespace orfield {

struct RenderOptions {
  // Draw an arrow every `arrow_stride` cells per axis; no arrows when unset.
  std::optional<int> arrow_stride;
  double pixels_per_cell = 4.0;
  // Field layer opacity when drawn over an occupancy layer.
  double field_opacity = 0.6;

  // Throws kInvalidArgument unless arrow_stride > 0 and the scalars are
  // positive (opacity in (0, 1]).
  void validate() const;
};

struct RenderInputs {
  const OccupancyGrid* occupancy = nullptr;
  const OrField* field = nullptr;
  std::vector<const Trajectory*> trajectories;
};

// Layers, bottom to top: occupancy (Free white, Obstacle dark, Unknown gray),
// field colored by vector angle with brightness by norm, optional arrows,
// trajectories as polylines. North is up. With no raster the canvas is the
// trajectory bounding box at 0.2 m per cell plus a 1 m margin.
// Throws kGeometryMismatch when occupancy and field geometries differ and
// kInvalidArgument when there is nothing to draw.
std::string render_svg(const RenderInputs& inputs, const RenderOptions& options);

}  // namespace orfield

#endif  // ORFIELD_RENDER_HPP_
