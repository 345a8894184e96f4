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

// Orientation field construction.
//
// Two families live here. Route-derived fields (initial_orfield,
// nearest_edge_orfield) only look at the waypoint route. Occupancy-derived
// fields start from the free space: exact distance transforms, their
// gradients, a Dijkstra tree rooted at a target frontier, and the combined
// orientation label that keeps the border-parallel direction and orients it
// along the Dijkstra tree.
//
// Unknown cells are never traversable and count as non-Free everywhere.

#ifndef ORFIELD_FIELDS_HPP_
#define ORFIELD_FIELDS_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "orfield/geometry.hpp"
#include "orfield/grid.hpp"

namespace orfield {

struct Frontier {
  std::vector<Cell> cells;  // scan order
  Cell representative;
};

using FrontierSet = std::vector<Frontier>;

enum class FieldVariant {
  kInitialOrField,
  kNearest,
  kDijkstra,
  kGradient,
  kDijkstraFull,
  kGradientFull,
};

// CLI-style names: initial, nearest, dijkstra, gradient, dijkstra-full,
// gradient-full.
std::string_view to_string(FieldVariant v);
std::optional<FieldVariant> parse_field_variant(std::string_view name);

struct InitialField {
  OrField orientation;
  ScalarGrid distance;  // meters to the closest chain point
};

// Tangent of the closest Bezier chain point per cell, plus the distance map.
InitialField initial_orfield(const Route& route, const GridGeometry& g);

// Direction of the nearest route edge per cell, no smoothing. Ties go to the
// lower edge index.
OrField nearest_edge_orfield(const Route& route, const GridGeometry& g);

// Exact Euclidean distance (meters, center to center) from each Free cell to
// the nearest non-Free cell; 0 on non-Free cells. Throws kDegenerate when
// the grid has no non-Free cell.
ScalarGrid edt(const OccupancyGrid& occ);

// Distance from each non-Free cell to the nearest Free cell; 0 on Free cells.
// Throws kDegenerate when no cell is Free and some cell is not.
ScalarGrid inverse_edt(const OccupancyGrid& occ);

// Central-difference gradient normalized to unit length (one-sided on the
// border). Cells with vanishing or non-finite gradient get the zero vector.
OrField gradient_direction(const ScalarGrid& s);

// Every vector turned +90 degrees.
OrField perpendicular_direction(const OrField& gradient);

bool is_free(const OccupancyGrid& occ, Cell c);

// Maximal 8-connected groups of Free cells that lie on the raster border or
// are 4-adjacent to Unknown, with at least min_length cells. Ordered by the
// scan index of their first cell; the representative is the member nearest
// the group centroid.
FrontierSet find_frontiers(const OccupancyGrid& occ, int min_length);

struct DijkstraField {
  ScalarGrid distance;            // meters, +inf for non-Free or unreachable cells
  OrField direction;              // unit vector toward the tree parent
  std::vector<std::int64_t> parent;  // linear index of the parent, -1 if none
};

// 8-connected shortest-path tree over Free cells rooted at target
// (diagonal cost sqrt(2) * resolution). Throws kInvalidArgument when target
// is not Free.
DijkstraField dijkstra_field(const OccupancyGrid& occ, Cell target);

// Cells from source to the tree root, inclusive. Throws kNoPath when source
// is unreachable.
std::vector<Cell> trace_path(const DijkstraField& tree, Cell source);

// Orientation label: on Free cells the rotated EDT gradient, flipped to agree
// with the Dijkstra direction (or the Dijkstra direction itself where the
// rotated gradient vanishes); on non-Free cells the negative inverse-EDT
// gradient.
OrField orientation_label(const OccupancyGrid& occ, Cell target);

struct FieldInputs {
  const OccupancyGrid* occupancy = nullptr;
  const Route* route = nullptr;
  std::optional<Cell> target;
  // Raster for the route variants when no occupancy is supplied.
  std::optional<GridGeometry> geometry;
};

// Dispatch over the ablation variants. The "Full" variants are computed the
// same way as their partial counterparts; the caller decides which occupancy
// grid to pass.
OrField make_field(FieldVariant variant, const FieldInputs& inputs);

// Waypoints every ~5 m along a cell path, interior ones shifted sideways by
// uniform(-max_shift, max_shift) and pulled back until they sit on Free
// cells. Deterministic in seed.
Route augment_path(const OccupancyGrid& occ, const std::vector<Cell>& path, std::uint64_t seed,
                   double max_shift);

inline constexpr double kAugmentSpacing = 5.0;

}  // namespace orfield

#endif  // ORFIELD_FIELDS_HPP_
