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

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>

#include "orfield/random.hpp"

namespace orfield {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Stand-in for "no source" in the squared-distance passes. Every sum stays an
// exact integer in double precision.
constexpr double kFar = 1e12;

// One-dimensional squared distance transform of sampled function f (lower
// envelope of parabolas). Values are exact for integer inputs.
void squared_dt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
                   std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  int k = 0;
  v[0] = 0;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = 1; q < n; ++q) {
    double s = 0.0;
    while (true) {
      const int p = v[k];
      s = ((f[q] + static_cast<double>(q) * q) - (f[p] + static_cast<double>(p) * p)) /
          (2.0 * (q - p));
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = static_cast<double>(q - v[k]);
    d[q] = dq * dq + f[v[k]];
  }
}

// Exact EDT to cells where is_source() holds. Distances in meters.
template <typename IsSource>
ScalarGrid exact_edt(const OccupancyGrid& occ, IsSource is_source) {
  const GridGeometry& g = occ.geometry();
  const int w = g.width();
  const int h = g.height();
  std::vector<double> sq(g.cell_count());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = is_source(occ.values()[i]) ? 0.0 : kFar;

  const int n = std::max(w, h);
  std::vector<double> f(n), d(n), z(n + 1);
  std::vector<int> v(n);

  // Columns.
  f.resize(h);
  d.resize(h);
  for (int c = 0; c < w; ++c) {
    for (int r = 0; r < h; ++r) f[r] = sq[static_cast<std::size_t>(r) * w + c];
    squared_dt_1d(f, d, v, z);
    for (int r = 0; r < h; ++r) sq[static_cast<std::size_t>(r) * w + c] = d[r];
  }
  // Rows.
  f.resize(w);
  d.resize(w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) f[c] = sq[static_cast<std::size_t>(r) * w + c];
    squared_dt_1d(f, d, v, z);
    for (int c = 0; c < w; ++c) sq[static_cast<std::size_t>(r) * w + c] = d[c];
  }

  ScalarGrid out(g);
  auto values = out.values();
  for (std::size_t i = 0; i < sq.size(); ++i) values[i] = std::sqrt(sq[i]) * g.resolution();
  return out;
}

const std::array<Cell, 8> kNeighbors8 = {
    Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1},
    Cell{1, 1}, Cell{-1, 1}, Cell{1, -1}, Cell{-1, -1}};
const std::array<Cell, 4> kNeighbors4 = {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}};

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double t = std::clamp(dot(p - a, ab) / ab.squared_norm(), 0.0, 1.0);
  return distance(p, a + t * ab);
}

}  // namespace

std::string_view to_string(FieldVariant v) {
  switch (v) {
    case FieldVariant::kInitialOrField: return "initial";
    case FieldVariant::kNearest: return "nearest";
    case FieldVariant::kDijkstra: return "dijkstra";
    case FieldVariant::kGradient: return "gradient";
    case FieldVariant::kDijkstraFull: return "dijkstra-full";
    case FieldVariant::kGradientFull: return "gradient-full";
  }
  return "unknown";
}

std::optional<FieldVariant> parse_field_variant(std::string_view name) {
  for (FieldVariant v : {FieldVariant::kInitialOrField, FieldVariant::kNearest,
                         FieldVariant::kDijkstra, FieldVariant::kGradient,
                         FieldVariant::kDijkstraFull, FieldVariant::kGradientFull}) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

InitialField initial_orfield(const Route& route, const GridGeometry& g) {
  const BezierChain chain = route_to_bezier_chain(route);
  InitialField out{OrField(g), ScalarGrid(g)};
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      const ChainProjection proj = closest_point_on_chain(chain, g.cell_center({c, r}));
      out.orientation(c, r) = proj.tangent;
      out.distance(c, r) = proj.distance;
    }
  }
  return out;
}

OrField nearest_edge_orfield(const Route& route, const GridGeometry& g) {
  const auto& w = route.waypoints();
  std::vector<Vec2> dirs;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) dirs.push_back(normalized_or_zero(w[i + 1] - w[i]));
  OrField out(g);
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      const Vec2 p = g.cell_center({c, r});
      std::size_t best = 0;
      double best_d = kInf;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const double d = point_segment_distance(p, w[i], w[i + 1]);
        if (d < best_d) {
          best_d = d;
          best = i;
        }
      }
      out(c, r) = dirs[best];
    }
  }
  return out;
}

bool is_free(const OccupancyGrid& occ, Cell c) {
  return occ.geometry().contains(c) && occ(c) == CellState::kFree;
}

ScalarGrid edt(const OccupancyGrid& occ) {
  const auto v = occ.values();
  if (std::all_of(v.begin(), v.end(), [](CellState s) { return s == CellState::kFree; })) {
    throw Error(ErrorCode::kDegenerate, "distance transform undefined on an all-Free grid");
  }
  return exact_edt(occ, [](CellState s) { return s != CellState::kFree; });
}

ScalarGrid inverse_edt(const OccupancyGrid& occ) {
  const auto v = occ.values();
  if (std::none_of(v.begin(), v.end(), [](CellState s) { return s == CellState::kFree; })) {
    throw Error(ErrorCode::kDegenerate, "inverse distance transform undefined without Free cells");
  }
  return exact_edt(occ, [](CellState s) { return s == CellState::kFree; });
}

OrField gradient_direction(const ScalarGrid& s) {
  const int w = s.width();
  const int h = s.height();
  if (w < 3 || h < 3) throw Error(ErrorCode::kInvalidArgument, "gradient needs a grid of at least 3x3");
  OrField out(s.geometry());
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double gx = 0.0;
      double gy = 0.0;
      if (c == 0) {
        gx = s(1, r) - s(0, r);
      } else if (c == w - 1) {
        gx = s(w - 1, r) - s(w - 2, r);
      } else {
        gx = 0.5 * (s(c + 1, r) - s(c - 1, r));
      }
      if (r == 0) {
        gy = s(c, 1) - s(c, 0);
      } else if (r == h - 1) {
        gy = s(c, h - 1) - s(c, h - 2);
      } else {
        gy = 0.5 * (s(c, r + 1) - s(c, r - 1));
      }
      const Vec2 grad{gx, gy};
      const double n = grad.norm();
      out(c, r) = (std::isfinite(n) && n >= 1e-9) ? grad / n : Vec2{};
    }
  }
  return out;
}

OrField perpendicular_direction(const OrField& gradient) {
  OrField out(gradient.geometry());
  auto src = gradient.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = rotate90(src[i]);
  return out;
}

FrontierSet find_frontiers(const OccupancyGrid& occ, int min_length) {
  const GridGeometry& g = occ.geometry();
  const int w = g.width();
  const int h = g.height();
  std::vector<char> is_frontier(g.cell_count(), 0);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (occ(c, r) != CellState::kFree) continue;
      bool frontier = c == 0 || r == 0 || c == w - 1 || r == h - 1;
      for (const Cell d : kNeighbors4) {
        const Cell n{c + d.col, r + d.row};
        if (g.contains(n) && occ(n) == CellState::kUnknown) frontier = true;
      }
      is_frontier[g.index({c, r})] = frontier ? 1 : 0;
    }
  }

  FrontierSet out;
  std::vector<char> seen(g.cell_count(), 0);
  for (std::size_t start = 0; start < is_frontier.size(); ++start) {
    if (!is_frontier[start] || seen[start]) continue;
    std::vector<std::size_t> members;
    std::deque<std::size_t> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      members.push_back(i);
      const Cell c = g.cell_at(i);
      for (const Cell d : kNeighbors8) {
        const Cell n{c.col + d.col, c.row + d.row};
        if (!g.contains(n)) continue;
        const std::size_t j = g.index(n);
        if (is_frontier[j] && !seen[j]) {
          seen[j] = 1;
          queue.push_back(j);
        }
      }
    }
    if (static_cast<int>(members.size()) < min_length) continue;
    std::sort(members.begin(), members.end());
    Frontier f;
    Vec2 centroid;
    for (std::size_t i : members) {
      f.cells.push_back(g.cell_at(i));
      centroid += Vec2{static_cast<double>(f.cells.back().col),
                       static_cast<double>(f.cells.back().row)};
    }
    centroid = centroid / static_cast<double>(members.size());
    double best = kInf;
    for (const Cell c : f.cells) {
      const double d = (Vec2{static_cast<double>(c.col), static_cast<double>(c.row)} - centroid)
                           .squared_norm();
      if (d < best) {
        best = d;
        f.representative = c;
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

DijkstraField dijkstra_field(const OccupancyGrid& occ, Cell target) {
  if (!is_free(occ, target)) throw Error(ErrorCode::kInvalidArgument, "dijkstra target is not a Free cell");
  const GridGeometry& g = occ.geometry();
  DijkstraField out{ScalarGrid(g, kInf), OrField(g),
                    std::vector<std::int64_t>(g.cell_count(), -1)};
  auto dist = out.distance.values();
  const double straight = g.resolution();
  const double diagonal = std::sqrt(2.0) * g.resolution();
  const double tie_eps = 1e-9 * g.resolution();

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  const std::size_t root = g.index(target);
  dist[root] = 0.0;
  heap.push({0.0, root});
  std::vector<char> done(g.cell_count(), 0);
  while (!heap.empty()) {
    const auto [d, i] = heap.top();
    heap.pop();
    if (done[i]) continue;
    done[i] = 1;
    const Cell c = g.cell_at(i);
    for (const Cell step : kNeighbors8) {
      const Cell n{c.col + step.col, c.row + step.row};
      if (!is_free(occ, n)) continue;
      const std::size_t j = g.index(n);
      if (done[j]) continue;
      const bool is_diagonal = step.col != 0 && step.row != 0;
      const double nd = d + (is_diagonal ? diagonal : straight);
      if (nd < dist[j] - tie_eps) {
        dist[j] = nd;
        out.parent[j] = static_cast<std::int64_t>(i);
        heap.push({nd, j});
      } else if (!is_diagonal && nd <= dist[j] + tie_eps && out.parent[j] >= 0) {
        // Equal cost: keep the axis-aligned parent so ties do not depend on
        // summation order.
        const Cell p = g.cell_at(static_cast<std::size_t>(out.parent[j]));
        if (p.col != n.col && p.row != n.row) out.parent[j] = static_cast<std::int64_t>(i);
      }
    }
  }

  for (std::size_t i = 0; i < out.parent.size(); ++i) {
    if (out.parent[i] < 0) continue;
    const Cell c = g.cell_at(i);
    const Cell p = g.cell_at(static_cast<std::size_t>(out.parent[i]));
    out.direction.values()[i] = normalized_or_zero(
        Vec2{static_cast<double>(p.col - c.col), static_cast<double>(p.row - c.row)});
  }
  return out;
}

std::vector<Cell> trace_path(const DijkstraField& tree, Cell source) {
  const GridGeometry& g = tree.distance.geometry();
  if (!g.contains(source) || !std::isfinite(tree.distance(source))) {
    throw Error(ErrorCode::kNoPath, "source cell is not reachable from the tree root");
  }
  std::vector<Cell> path{source};
  std::int64_t i = tree.parent[g.index(source)];
  while (i >= 0) {
    path.push_back(g.cell_at(static_cast<std::size_t>(i)));
    i = tree.parent[static_cast<std::size_t>(i)];
  }
  return path;
}

OrField orientation_label(const OccupancyGrid& occ, Cell target) {
  const DijkstraField tree = dijkstra_field(occ, target);
  const GridGeometry& g = occ.geometry();
  const auto states = occ.values();
  const bool has_blocked =
      std::any_of(states.begin(), states.end(), [](CellState s) { return s != CellState::kFree; });

  const OrField along = has_blocked ? perpendicular_direction(gradient_direction(edt(occ)))
                                    : OrField(g);
  const OrField into_free = has_blocked ? gradient_direction(inverse_edt(occ)) : OrField(g);

  OrField label(g);
  auto out = label.values();
  const auto dij = tree.direction.values();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (states[i] == CellState::kFree) {
      const Vec2 p = along.values()[i];
      if (p == Vec2{}) {
        out[i] = dij[i];
      } else {
        out[i] = dot(p, dij[i]) < 0.0 ? -p : p;
      }
    } else {
      out[i] = -into_free.values()[i];
    }
  }
  return label;
}

OrField make_field(FieldVariant variant, const FieldInputs& in) {
  const auto require_route = [&] {
    if (in.route == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(to_string(variant)) + " field requires a route");
    }
    if (in.occupancy != nullptr) return in.occupancy->geometry();
    if (in.geometry) return *in.geometry;
    throw Error(ErrorCode::kInvalidArgument,
                std::string(to_string(variant)) + " field requires a grid geometry");
  };
  const auto require_occupancy = [&] {
    if (in.occupancy == nullptr || !in.target) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(to_string(variant)) + " field requires occupancy and a target cell");
    }
  };
  switch (variant) {
    case FieldVariant::kInitialOrField:
      return initial_orfield(*in.route, require_route()).orientation;
    case FieldVariant::kNearest: {
      const GridGeometry g = require_route();
      return nearest_edge_orfield(*in.route, g);
    }
    case FieldVariant::kDijkstra:
    case FieldVariant::kDijkstraFull:
      require_occupancy();
      return dijkstra_field(*in.occupancy, *in.target).direction;
    case FieldVariant::kGradient:
    case FieldVariant::kGradientFull:
      require_occupancy();
      return orientation_label(*in.occupancy, *in.target);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown field variant");
}

Route augment_path(const OccupancyGrid& occ, const std::vector<Cell>& path, std::uint64_t seed,
                   double max_shift) {
  if (path.size() < 2) throw Error(ErrorCode::kInvalidArgument, "path needs at least two cells");
  if (!(max_shift >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "max_shift must be >= 0");
  const GridGeometry& g = occ.geometry();

  std::vector<Vec2> picked{g.cell_center(path.front())};
  double arc = 0.0;
  double next_mark = kAugmentSpacing;
  for (std::size_t i = 1; i < path.size(); ++i) {
    arc += distance(g.cell_center(path[i - 1]), g.cell_center(path[i]));
    if (arc >= next_mark && i + 1 < path.size()) {
      picked.push_back(g.cell_center(path[i]));
      while (next_mark <= arc) next_mark += kAugmentSpacing;
    }
  }
  const Vec2 last = g.cell_center(path.back());
  if (picked.back() != last) picked.push_back(last);
  if (picked.size() < 2) throw Error(ErrorCode::kDegenerate, "path collapses to a single point");

  Rng rng(seed);
  std::vector<Vec2> shifted = picked;
  const double back_off = 0.5 * g.resolution();
  for (std::size_t i = 1; i + 1 < picked.size(); ++i) {
    const Vec2 normal = rotate90(normalized_or_zero(picked[i + 1] - picked[i - 1]));
    double offset = rng.uniform(-max_shift, max_shift);
    while (true) {
      const Vec2 candidate = picked[i] + offset * normal;
      const auto cell = g.world_to_cell(candidate);
      if (cell && occ(*cell) == CellState::kFree) {
        shifted[i] = candidate;
        break;
      }
      if (std::abs(offset) <= back_off) {
        shifted[i] = picked[i];
        break;
      }
      offset -= std::copysign(back_off, offset);
    }
  }

  std::vector<Vec2> waypoints;
  for (const Vec2& p : shifted) {
    if (waypoints.empty() || waypoints.back() != p) waypoints.push_back(p);
  }
  return Route(std::move(waypoints));
}

}  // namespace orfield
