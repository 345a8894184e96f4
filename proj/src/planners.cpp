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

#include <algorithm>
#include <cmath>
#include <limits>

#include "orfield/loss.hpp"

namespace orfield {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfPi = 0.5 * kPi;

Vec2 sample_disc(Rng& rng, Vec2 center, double radius) {
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  return center + radius * std::sqrt(u1) * unit_from_angle(kTwoPi * u2);
}

constexpr int kMaxSampleAttempts = 64;

// Uniform disc sample restricted to the raster and, with an occupancy grid,
// to traversable cells. Rejected draws are repeated up to
// kMaxSampleAttempts times.
std::optional<Vec2> sample_free(Rng& rng, Vec2 center, double radius, const GridGeometry& g,
                                const OccupancyGrid* occ, bool unknown_blocks) {
  for (int attempt = 0; attempt < kMaxSampleAttempts; ++attempt) {
    const Vec2 p = sample_disc(rng, center, radius);
    if (!g.contains_point(p)) continue;
    if (occ != nullptr) {
      const auto c = occ->geometry().world_to_cell(p);
      if (!c) continue;
      const CellState s = (*occ)(*c);
      if (s == CellState::kObstacle || (unknown_blocks && s == CellState::kUnknown)) continue;
    }
    return p;
  }
  return std::nullopt;
}

int nearest_node(const std::vector<Vec2>& nodes, Vec2 p) {
  int best = 0;
  double best_d2 = kInf;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double d2 = (nodes[i] - p).squared_norm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<int>(i);
    }
  }
  return best;
}

std::vector<int> nodes_within(const std::vector<Vec2>& nodes, Vec2 p, double radius, int always) {
  std::vector<int> out;
  const double r2 = radius * radius;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (static_cast<int>(i) == always || (nodes[i] - p).squared_norm() <= r2) {
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

bool segment_free(const OccupancyGrid& occ, Vec2 a, Vec2 b, bool unknown_blocks) {
  const GridGeometry& g = occ.geometry();
  if (!g.contains_point(a) || !g.contains_point(b)) return false;
  for (const Cell c : supercover_cells(g, a, b)) {
    const CellState s = occ(c);
    if (s == CellState::kObstacle) return false;
    if (unknown_blocks && s == CellState::kUnknown) return false;
  }
  return true;
}

bool is_ancestor(const RrtTree& tree, int candidate, int node) {
  for (int i = node; i >= 0; i = tree.parent[static_cast<std::size_t>(i)]) {
    if (i == candidate) return true;
  }
  return false;
}

// Re-derives energy and path length of `node`'s descendants from their
// stored edge costs, parent first.
void refresh_subtree(RrtTree& tree, int node) {
  std::vector<int> stack{node};
  while (!stack.empty()) {
    const auto i = static_cast<std::size_t>(stack.back());
    stack.pop_back();
    for (int child : tree.children[i]) {
      const auto c = static_cast<std::size_t>(child);
      tree.energy[c] = tree.energy[i] + tree.edge_cost[c];
      tree.path_length[c] = tree.path_length[i] + distance(tree.position[i], tree.position[c]);
      stack.push_back(child);
    }
  }
}

void add_node(RrtTree& tree, Vec2 p, int parent, double edge_cost) {
  const auto pi = static_cast<std::size_t>(parent);
  tree.position.push_back(p);
  tree.parent.push_back(parent);
  tree.edge_cost.push_back(edge_cost);
  tree.energy.push_back(tree.energy[pi] + edge_cost);
  tree.path_length.push_back(tree.path_length[pi] + distance(tree.position[pi], p));
  tree.children.emplace_back();
  tree.children[pi].push_back(static_cast<int>(tree.size() - 1));
}

void set_parent(RrtTree& tree, int node, int new_parent, double edge_cost) {
  const auto n = static_cast<std::size_t>(node);
  auto& siblings = tree.children[static_cast<std::size_t>(tree.parent[n])];
  siblings.erase(std::find(siblings.begin(), siblings.end(), node));
  tree.parent[n] = new_parent;
  tree.children[static_cast<std::size_t>(new_parent)].push_back(node);
  tree.edge_cost[n] = edge_cost;
  const auto p = static_cast<std::size_t>(new_parent);
  tree.energy[n] = tree.energy[p] + edge_cost;
  tree.path_length[n] = tree.path_length[p] + distance(tree.position[p], tree.position[n]);
  refresh_subtree(tree, node);
}

RrtTree make_root(Vec2 p) {
  RrtTree t;
  t.position.push_back(p);
  t.parent.push_back(-1);
  t.energy.push_back(0.0);
  t.path_length.push_back(0.0);
  t.edge_cost.push_back(0.0);
  t.children.emplace_back();
  return t;
}

std::vector<Vec2> positions_of(const RrtTree& tree, int node) {
  std::vector<Vec2> out;
  for (int i : tree.path_to(node)) out.push_back(tree.position[static_cast<std::size_t>(i)]);
  // A single-node path still has to be a valid trajectory.
  if (out.size() == 1) out.push_back(out.front());
  return out;
}

OrField smoothed_field(const OrField& field, const PlannerParams& params) {
  OrField out = uniform_filter(field, params.smoothing_radius);
  if (params.downsample) out = downsample_field(out, 2);
  return out;
}

}  // namespace

void PlannerParams::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(step_size) || !positive(neighbor_radius) || !positive(planning_radius) ||
      !positive(handle)) {
    throw Error(ErrorCode::kInvalidArgument, "planner lengths must be positive");
  }
  if (iterations < 1) throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 1");
  if (candidate_count < 1) throw Error(ErrorCode::kInvalidArgument, "candidate_count must be >= 1");
  if (smoothing_radius < 0) throw Error(ErrorCode::kInvalidArgument, "smoothing_radius must be >= 0");
  if (neighbor_radius < step_size) {
    throw Error(ErrorCode::kInvalidArgument, "neighbor_radius must be >= step_size");
  }
  if (!(sampling_margin >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "sampling_margin must be >= 0");
  if (!(goal_bias >= 0.0 && goal_bias <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "goal_bias must lie in [0,1]");
  }
}

std::string_view to_string(PlannerKind k) {
  switch (k) {
    case PlannerKind::kFieldRrtStar: return "field-rrt";
    case PlannerKind::kFieldBezier: return "field-bezier";
    case PlannerKind::kPointRrtStar: return "point-rrt";
  }
  return "unknown";
}

std::optional<PlannerKind> parse_planner(std::string_view name) {
  for (PlannerKind k : {PlannerKind::kFieldRrtStar, PlannerKind::kFieldBezier, PlannerKind::kPointRrtStar}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

double cell_energy(Vec2 n, Vec2 v) {
  const double m = std::min(n.norm(), 1.0);
  if (m == 0.0) return kHalfPi;
  const double dtheta = std::abs(angular_residual({n.angle(), v.angle(), 0.0}));
  return m * (0.5 * dtheta) + (1.0 - m) * kHalfPi;
}

double edge_energy(const OrField& field, Vec2 a, Vec2 b) {
  const Vec2 dir = b - a;
  if (dir.squared_norm() == 0.0) throw Error(ErrorCode::kInvalidArgument, "edge endpoints coincide");
  const Vec2 v = dir / dir.norm();
  double e = 0.0;
  for (const Cell c : supercover_cells(field.geometry(), a, b)) e += cell_energy(field(c), v);
  return e;
}

double curve_energy(const OrField& field, const CubicBezier& curve) {
  const GridGeometry& g = field.geometry();
  const double len = approximate_length(curve, 64);
  const int n = std::max(8, static_cast<int>(std::ceil(len / (0.25 * g.resolution()))));
  double e = 0.0;
  bool have_prev = false;
  long long prev_col = 0;
  long long prev_row = 0;
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    const Vec2 u = g.to_grid_coords(curve.eval(t));
    const auto col = static_cast<long long>(std::floor(u.x));
    const auto row = static_cast<long long>(std::floor(u.y));
    if (have_prev && col == prev_col && row == prev_row) continue;
    have_prev = true;
    prev_col = col;
    prev_row = row;
    const Cell c{static_cast<int>(col), static_cast<int>(row)};
    if (col < 0 || row < 0 || col >= g.width() || row >= g.height()) {
      e += kHalfPi;
      continue;
    }
    Vec2 tangent = curve.derivative(t);
    if (tangent.squared_norm() == 0.0) tangent = curve.p3 - curve.p0;
    e += tangent.squared_norm() == 0.0 ? kHalfPi : cell_energy(field(c), tangent);
  }
  return e;
}

std::vector<int> RrtTree::path_to(int node) const {
  std::vector<int> out;
  for (int i = node; i >= 0; i = parent[static_cast<std::size_t>(i)]) out.push_back(i);
  std::reverse(out.begin(), out.end());
  return out;
}

FieldRrtStar::FieldRrtStar(const OrField& field, const OccupancyGrid* occupancy, const Pose& start,
                           const PlannerParams& params)
    : field_(smoothed_field(field, params)),
      occupancy_(occupancy),
      start_(start),
      params_(params),
      rng_(params.rng_seed),
      tree_(make_root(start.position)),
      best_energy_(kInf) {
  params_.validate();
  if (!field_.geometry().contains_point(start.position)) {
    throw Error(ErrorCode::kOutOfRange, "start pose outside the field");
  }
  update_incumbent();
}

bool FieldRrtStar::edge_allowed(Vec2 a, Vec2 b) const {
  if (!field_.geometry().contains_point(a) || !field_.geometry().contains_point(b)) return false;
  return occupancy_ == nullptr || segment_free(*occupancy_, a, b, /*unknown_blocks=*/false);
}

void FieldRrtStar::step() {
  ++iterations_;
  const auto drawn = sample_free(rng_, start_.position, params_.planning_radius + params_.sampling_margin,
                                field_.geometry(), occupancy_, /*unknown_blocks=*/false);
  if (!drawn) return;
  const Vec2 sample = *drawn;

  const int nearest = nearest_node(tree_.position, sample);
  const Vec2 from = tree_.position[static_cast<std::size_t>(nearest)];
  const double d = distance(from, sample);
  if (d < 1e-9) return;
  const Vec2 p = d <= params_.step_size ? sample : from + (sample - from) * (params_.step_size / d);

  const std::vector<int> near = nodes_within(tree_.position, p, params_.neighbor_radius, nearest);
  int parent = -1;
  double parent_edge = 0.0;
  double best = kInf;
  for (int j : near) {
    const Vec2 q = tree_.position[static_cast<std::size_t>(j)];
    if ((q - p).squared_norm() < 1e-18 || !edge_allowed(q, p)) continue;
    const double e = edge_energy(field_, q, p);
    const double total = tree_.energy[static_cast<std::size_t>(j)] + e;
    if (total < best) {
      best = total;
      parent = j;
      parent_edge = e;
    }
  }
  if (parent < 0) return;
  add_node(tree_, p, parent, parent_edge);
  const int added = static_cast<int>(tree_.size() - 1);

  const double e_new = tree_.energy.back();
  for (int j : near) {
    if (j == parent) continue;
    const auto ju = static_cast<std::size_t>(j);
    const Vec2 q = tree_.position[ju];
    if ((q - p).squared_norm() < 1e-18 || !edge_allowed(p, q)) continue;
    const double e = edge_energy(field_, p, q);
    if (e_new + e < tree_.energy[ju] - 1e-12 && !is_ancestor(tree_, j, added)) {
      set_parent(tree_, j, added, e);
    }
  }
  update_incumbent();
}

void FieldRrtStar::update_incumbent() {
  int node = -1;
  double best = kInf;
  for (std::size_t i = 0; i < tree_.size(); ++i) {
    if (tree_.path_length[i] >= params_.planning_radius && tree_.energy[i] < best) {
      best = tree_.energy[i];
      node = static_cast<int>(i);
    }
  }
  // The incumbent only ever improves; a rewire can shorten an eligible path
  // below the radius, and the previous best path is kept in that case.
  if (node >= 0 && best < best_energy_) {
    best_energy_ = best;
    best_path_ = positions_of(tree_, node);
  }
}

PlanResult FieldRrtStar::result() const {
  std::size_t eligible = 0;
  for (double len : tree_.path_length) eligible += len >= params_.planning_radius ? 1 : 0;
  if (!best_path_.empty()) {
    return {Trajectory::from_positions(best_path_, start_.heading), best_energy_, iterations_,
            tree_.size(), eligible, false};
  }
  int longest = 0;
  for (std::size_t i = 0; i < tree_.size(); ++i) {
    if (tree_.path_length[i] > tree_.path_length[static_cast<std::size_t>(longest)]) {
      longest = static_cast<int>(i);
    }
  }
  return {Trajectory::from_positions(positions_of(tree_, longest), start_.heading),
          tree_.energy[static_cast<std::size_t>(longest)], iterations_, tree_.size(), 0, true};
}

PlanResult field_rrt_star(const OrField& field, const OccupancyGrid* occupancy, const Pose& start,
                          const PlannerParams& params) {
  FieldRrtStar planner(field, occupancy, start, params);
  for (int i = 0; i < params.iterations; ++i) planner.step();
  return planner.result();
}

double field_heading(const OrField& field, Vec2 p, double fallback) {
  const Vec2 n = sample_nearest(field, p);
  return n.squared_norm() > 1e-24 ? n.angle() : fallback;
}

std::vector<BezierCandidate> field_bezier_candidates(const OrField& smoothed_field,
                                                      const Pose& start,
                                                      const PlannerParams& params) {
  const GridGeometry& g = smoothed_field.geometry();
  if (!g.contains_point(start.position)) throw Error(ErrorCode::kOutOfRange, "start pose outside the field");
  const double start_heading = field_heading(smoothed_field, start.position, start.heading);
  const Pose s{start.position, start_heading};
  std::vector<BezierCandidate> out;
  for (int k = 0; k < params.candidate_count; ++k) {
    const double phi = start_heading + kTwoPi * k / params.candidate_count;
    const Vec2 end = start.position + params.planning_radius * unit_from_angle(phi);
    if (!g.contains_point(end)) continue;
    const Pose e{end, field_heading(smoothed_field, end, phi)};
    const CubicBezier curve = plan_bezier_candidate(s, e, params.handle);
    out.push_back({curve, curve_energy(smoothed_field, curve), k});
  }
  return out;
}

Trajectory sample_curve(const CubicBezier& curve, double spacing) {
  const double len = approximate_length(curve, 64);
  const int n = std::max(2, static_cast<int>(std::ceil(len / spacing)));
  std::vector<Pose> poses;
  poses.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    poses.push_back({curve.eval(t), bezier_tangent(curve, t).angle()});
  }
  return Trajectory(std::move(poses));
}

PlanResult field_bezier(const OrField& field, const Pose& start, const PlannerParams& params) {
  params.validate();
  const OrField smoothed = smoothed_field(field, params);
  const std::vector<BezierCandidate> candidates = field_bezier_candidates(smoothed, start, params);
  if (candidates.empty()) throw Error(ErrorCode::kNoPath, "every Bezier endpoint lies outside the field");
  const BezierCandidate* best = &candidates.front();
  for (const BezierCandidate& c : candidates) {
    if (c.energy < best->energy) best = &c;
  }
  constexpr double kSampleSpacing = 0.25;
  return {sample_curve(best->curve, kSampleSpacing), best->energy, params.candidate_count,
          candidates.size(), candidates.size(), false};
}

PlanResult point_rrt_star(const OccupancyGrid& occ, const Pose& start, Vec2 goal,
                          const PlannerParams& params) {
  params.validate();
  const GridGeometry& g = occ.geometry();
  const auto start_cell = g.world_to_cell(start.position);
  const auto goal_cell = g.world_to_cell(goal);
  if (!start_cell || occ(*start_cell) != CellState::kFree) {
    throw Error(ErrorCode::kInvalidArgument, "start is not on a Free cell");
  }
  if (!goal_cell || occ(*goal_cell) != CellState::kFree) {
    throw Error(ErrorCode::kInvalidArgument, "goal is not on a Free cell");
  }
  if (*start_cell == *goal_cell) {
    return {Trajectory::from_positions({start.position, goal}, start.heading),
            distance(start.position, goal), 0, 1, 1, false};
  }

  Rng rng(params.rng_seed);
  RrtTree tree = make_root(start.position);
  const double sample_radius =
      std::max(params.planning_radius, distance(start.position, goal)) + params.sampling_margin;
  const auto free_edge = [&](Vec2 a, Vec2 b) { return segment_free(occ, a, b, /*unknown_blocks=*/true); };

  int iterations = 0;
  for (; iterations < params.iterations; ++iterations) {
    std::optional<Vec2> drawn = goal;
    if (!(rng.uniform() < params.goal_bias)) {
      drawn = sample_free(rng, start.position, sample_radius, g, &occ, /*unknown_blocks=*/true);
    }
    if (!drawn) continue;
    const Vec2 sample = *drawn;
    const int nearest = nearest_node(tree.position, sample);
    const Vec2 from = tree.position[static_cast<std::size_t>(nearest)];
    const double d = distance(from, sample);
    if (d < 1e-9) continue;
    const Vec2 p = d <= params.step_size ? sample : from + (sample - from) * (params.step_size / d);
    if (!free_edge(from, p)) continue;

    const std::vector<int> near = nodes_within(tree.position, p, params.neighbor_radius, nearest);
    int parent = nearest;
    double best = tree.energy[static_cast<std::size_t>(nearest)] + distance(from, p);
    for (int j : near) {
      if (j == nearest) continue;
      const Vec2 q = tree.position[static_cast<std::size_t>(j)];
      const double c = tree.energy[static_cast<std::size_t>(j)] + distance(q, p);
      if (c < best && free_edge(q, p)) {
        best = c;
        parent = j;
      }
    }
    add_node(tree, p, parent, distance(tree.position[static_cast<std::size_t>(parent)], p));
    const int added = static_cast<int>(tree.size() - 1);
    for (int j : near) {
      if (j == parent) continue;
      const auto ju = static_cast<std::size_t>(j);
      const double len = distance(p, tree.position[ju]);
      if (len < 1e-12) continue;
      if (tree.energy.back() + len < tree.energy[ju] - 1e-12 && !is_ancestor(tree, j, added) &&
          free_edge(p, tree.position[ju])) {
        set_parent(tree, j, added, len);
      }
    }
  }

  int best_node = -1;
  double best_total = kInf;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const double to_goal = distance(tree.position[i], goal);
    if (to_goal > params.step_size) continue;
    const double total = tree.energy[i] + to_goal;
    if (total < best_total && (to_goal == 0.0 || free_edge(tree.position[i], goal))) {
      best_total = total;
      best_node = static_cast<int>(i);
    }
  }
  if (best_node < 0) throw Error(ErrorCode::kNoPath, "goal not reached within the iteration budget");

  std::vector<Vec2> path = positions_of(tree, best_node);
  if (path.back() != goal) {
    if (path.size() == 2 && path[0] == path[1]) path.pop_back();
    path.push_back(goal);
  }
  std::size_t in_goal = 0;
  for (const Vec2& p : tree.position) in_goal += distance(p, goal) <= params.step_size ? 1 : 0;
  return {Trajectory::from_positions(path, start.heading), best_total, iterations, tree.size(),
          in_goal, false};
}

}  // namespace orfield
