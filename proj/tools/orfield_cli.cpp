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

// orfield command-line tool. Only the C interface of the library is used.
//
// Exit codes: 0 success, 2 usage or input error, 3 degraded plan (the
// fallback trajectory is still written), 1 internal error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "orfield/orfield.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDegraded = 3;

// Library failure carrying its status.
struct Failure {
  orf_status status;
  std::string message;
};

void check(orf_status s) {
  if (s != ORF_OK) throw Failure{s, orf_last_error()};
}

// Usage-level failure detected by the tool itself.
[[noreturn]] void usage_error(const std::string& message) {
  throw Failure{ORF_INVALID_ARGUMENT, message};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
template <typename T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, Free>>;

using Occupancy = Handle<orf_occupancy, orf_occupancy_free>;
using Field = Handle<orf_field, orf_field_free>;
using Scalar = Handle<orf_scalar_grid, orf_scalar_grid_free>;
using RouteH = Handle<orf_route, orf_route_free>;
using Traj = Handle<orf_trajectory, orf_trajectory_free>;
using SceneH = Handle<orf_scene, orf_scene_free>;
using Plan = Handle<orf_plan, orf_plan_free>;

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out(s);
  orf_string_free(s);
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{ORF_IO_ERROR, "cannot open '" + path + "'"};
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Failure{ORF_IO_ERROR, "cannot write '" + path.string() + "'"};
}

Occupancy load_occupancy(const std::string& path) {
  orf_occupancy* p = nullptr;
  check(orf_occupancy_load(path.c_str(), &p));
  return Occupancy(p);
}

Field load_field(const std::string& path) {
  orf_field* p = nullptr;
  check(orf_field_load(path.c_str(), &p));
  return Field(p);
}

RouteH load_route(const std::string& path) {
  orf_route* p = nullptr;
  check(orf_route_load(path.c_str(), &p));
  return RouteH(p);
}

Traj load_trajectory(const std::string& path) {
  orf_trajectory* p = nullptr;
  check(orf_trajectory_load(path.c_str(), &p));
  return Traj(p);
}

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::string format = "json";
};

std::filesystem::path out_path(const Globals& g, const std::string& name) {
  return std::filesystem::path(g.out) / name;
}

// config.json: the subcommand, global flags and every flag given, in
// declaration order.
void write_config_echo(const Globals& g, const CLI::App& sub, const std::string& command) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["version"] = orf_version();
  j["seed"] = g.seed ? nlohmann::ordered_json(*g.seed) : nlohmann::ordered_json(nullptr);
  j["format"] = g.format;
  nlohmann::ordered_json args = nlohmann::ordered_json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    std::string name = opt->get_name(false, true);
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    const auto& results = opt->results();
    if (opt->get_type_size() == 0) {
      args[name] = true;
    } else if (results.size() == 1 && opt->get_items_expected_max() <= 1) {
      args[name] = results.front();
    } else {
      args[name] = results;
    }
  }
  j["args"] = args;
  write_text(out_path(g, "config.json"), j.dump(2) + "\n");
}

// --------------------------------------------------------------------------
// Subcommands

struct SceneArgs {
  std::string spec;
  bool full = false;
};

int run_scene(const Globals& g, const SceneArgs& a) {
  orf_scene* raw = nullptr;
  const std::string spec = read_text(a.spec);
  check(orf_scene_build(spec.c_str(), g.seed ? &*g.seed : nullptr, &raw));
  SceneH scene(raw);
  orf_occupancy* occ = nullptr;
  check(orf_scene_occupancy(scene.get(), 0, &occ));
  Occupancy occ_h(occ);
  check(orf_occupancy_save(occ, out_path(g, "occupancy.ofg").c_str()));
  if (a.full) {
    orf_occupancy* full = nullptr;
    check(orf_scene_occupancy(scene.get(), 1, &full));
    Occupancy full_h(full);
    check(orf_occupancy_save(full, out_path(g, "full_occupancy.ofg").c_str()));
  }
  orf_route* route = nullptr;
  check(orf_scene_route(scene.get(), &route));
  RouteH route_h(route);
  check(orf_route_save(route, out_path(g, "route.json").c_str()));
  orf_trajectory* gt = nullptr;
  check(orf_scene_ground_truth(scene.get(), &gt));
  Traj gt_h(gt);
  check(orf_trajectory_save(gt, out_path(g, "ground_truth.json").c_str()));
  return kExitOk;
}

struct FieldArgs {
  std::string variant;
  std::string occupancy;
  std::string route;
  std::vector<double> grid;
  std::int64_t target = -1;
  int min_frontier = 3;
};

int run_field(const Globals& g, const FieldArgs& a) {
  Occupancy occ;
  RouteH route;
  if (!a.occupancy.empty()) occ = load_occupancy(a.occupancy);
  if (!a.route.empty()) route = load_route(a.route);
  std::optional<orf_geometry> geom;
  if (!a.grid.empty()) {
    const double w = a.grid[0], h = a.grid[1];
    if (w != static_cast<std::int32_t>(w) || h != static_cast<std::int32_t>(h)) {
      usage_error("--grid width and height must be integers");
    }
    geom = orf_geometry{static_cast<std::int32_t>(w), static_cast<std::int32_t>(h), a.grid[2], a.grid[3],
                        a.grid[4]};
  }
  orf_field* field = nullptr;
  orf_scalar_grid* dist = nullptr;
  check(orf_field_build(a.variant.c_str(), occ.get(), route.get(), geom ? &*geom : nullptr, a.target,
                        a.min_frontier, &field, &dist));
  Field field_h(field);
  Scalar dist_h(dist);
  check(orf_field_save(field, out_path(g, "field.ofg").c_str()));
  if (dist) check(orf_scalar_grid_save(dist, out_path(g, "distance.ofg").c_str()));
  return kExitOk;
}

struct PlanArgs {
  std::string planner;
  std::string field;
  std::string occupancy;
  std::string params;
  std::vector<double> start{0.0, 0.0, 0.0};
  std::vector<double> goal;
};

int run_plan(const Globals& g, const PlanArgs& a) {
  Field field;
  Occupancy occ;
  if (!a.field.empty()) field = load_field(a.field);
  if (!a.occupancy.empty()) occ = load_occupancy(a.occupancy);
  std::string params;
  if (!a.params.empty()) params = read_text(a.params);
  const orf_pose start{a.start[0], a.start[1], a.start[2]};
  orf_plan* raw = nullptr;
  check(orf_plan_run(a.planner.c_str(), field.get(), occ.get(), a.params.empty() ? nullptr : params.c_str(),
                     g.seed ? &*g.seed : nullptr, start, a.goal.empty() ? nullptr : a.goal.data(), &raw));
  Plan plan(raw);
  orf_trajectory* traj = nullptr;
  check(orf_plan_trajectory(raw, &traj));
  Traj traj_h(traj);
  check(orf_trajectory_save(traj, out_path(g, "trajectory.json").c_str()));
  char* report = nullptr;
  check(orf_plan_report_json(raw, &report));
  write_text(out_path(g, "plan_report.json"), take(report));
  int degraded = 0;
  check(orf_plan_degraded(raw, &degraded));
  if (degraded) {
    std::cerr << "warning: no tree node reached the planning radius; wrote the fallback trajectory\n";
    return kExitDegraded;
  }
  return kExitOk;
}

struct EvalArgs {
  std::string trajectory;
  std::string truth;
  std::vector<double> radii;
  double threshold = 0.0;
};

int run_eval(const Globals& g, const EvalArgs& a) {
  const Traj planned = load_trajectory(a.trajectory);
  const Traj truth = load_trajectory(a.truth);
  char* report = nullptr;
  check(orf_evaluate(planned.get(), truth.get(), a.radii.data(), a.radii.size(), a.threshold, g.format.c_str(),
                     &report));
  write_text(out_path(g, "report." + g.format), take(report));
  return kExitOk;
}

struct ExperimentArgs {
  std::string harness;
  std::string config;
  std::optional<double> step;
  int threads = 0;
};

int run_experiment(const Globals& g, const ExperimentArgs& a) {
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  if (!a.config.empty()) {
    try {
      cfg = nlohmann::ordered_json::parse(read_text(a.config));
    } catch (const nlohmann::ordered_json::exception& e) {
      throw Failure{ORF_PARSE_ERROR, "experiment config: " + std::string(e.what())};
    }
    if (!cfg.is_object()) throw Failure{ORF_PARSE_ERROR, "experiment config must be a JSON object"};
  }
  if (a.step) {
    if (a.harness != "rotation") usage_error("--step applies to the rotation harness only");
    cfg["step_degrees"] = *a.step;
  }
  const std::string text = cfg.dump();
  const bool has_config = !a.config.empty() || a.step.has_value();
  char* result = nullptr;
  check(orf_experiment_run(a.harness.c_str(), has_config ? text.c_str() : nullptr, g.seed ? &*g.seed : nullptr,
                           a.threads, g.format.c_str(), &result));
  write_text(out_path(g, "results." + g.format), take(result));
  return kExitOk;
}

struct RenderArgs {
  std::string occupancy;
  std::string field;
  std::vector<std::string> trajectories;
  std::optional<int> arrows;
  double scale = 4.0;
  std::string name = "render.svg";
};

int run_render(const Globals& g, const RenderArgs& a) {
  Occupancy occ;
  Field field;
  std::vector<Traj> trajs;
  if (!a.occupancy.empty()) occ = load_occupancy(a.occupancy);
  if (!a.field.empty()) field = load_field(a.field);
  for (const auto& t : a.trajectories) trajs.push_back(load_trajectory(t));
  std::vector<const orf_trajectory*> ptrs;
  for (const auto& t : trajs) ptrs.push_back(t.get());
  char* svg = nullptr;
  check(orf_render_svg(occ.get(), field.get(), ptrs.data(), ptrs.size(), a.arrows.value_or(0), a.scale, &svg));
  write_text(out_path(g, a.name), take(svg));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orientation-field trajectory planning toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(orf_version()));

  Globals g;
  std::uint64_t seed_value = 0;
  CLI::Option* seed_opt = app.add_option("--seed", seed_value, "Run seed; replaces seeds in input documents");
  app.add_option("--out", g.out, "Output directory (created if missing)")->capture_default_str();
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  SceneArgs scene;
  CLI::App* scene_cmd = app.add_subcommand("scene", "Generate a synthetic scene");
  scene_cmd->add_option("--spec", scene.spec, "SceneSpec JSON")->required()->check(CLI::ExistingFile);
  scene_cmd->add_flag("--full", scene.full, "Also write the grid without occlusions");

  FieldArgs field;
  CLI::App* field_cmd = app.add_subcommand("field", "Build an orientation field");
  field_cmd->add_option("--variant", field.variant, "Field variant")
      ->required()
      ->check(CLI::IsMember({"initial", "nearest", "dijkstra", "gradient", "dijkstra-full", "gradient-full"}));
  field_cmd->add_option("--occupancy", field.occupancy, "Occupancy OFG1 file")->check(CLI::ExistingFile);
  field_cmd->add_option("--route", field.route, "Route JSON")->check(CLI::ExistingFile);
  field_cmd->add_option("--grid", field.grid, "Raster W H RESOLUTION ORIGIN_X ORIGIN_Y for route-only fields")
      ->expected(5);
  field_cmd->add_option("--target", field.target, "Target frontier index")
      ->check(CLI::Range(std::int64_t{0}, std::int64_t{1} << 40));
  field_cmd->add_option("--min-frontier", field.min_frontier, "Minimum frontier length in cells")
      ->check(CLI::Range(1, 1 << 20))
      ->capture_default_str();

  PlanArgs plan;
  CLI::App* plan_cmd = app.add_subcommand("plan", "Plan a trajectory");
  plan_cmd->add_option("--planner", plan.planner, "Planner")
      ->required()
      ->check(CLI::IsMember({"field-rrt", "field-bezier", "point-rrt"}));
  plan_cmd->add_option("--field", plan.field, "Field OFG1 file")->check(CLI::ExistingFile);
  plan_cmd->add_option("--occupancy", plan.occupancy, "Occupancy OFG1 file")->check(CLI::ExistingFile);
  plan_cmd->add_option("--params", plan.params, "PlannerParams JSON")->check(CLI::ExistingFile);
  plan_cmd->add_option("--start", plan.start, "Start pose X Y HEADING")->expected(3)->capture_default_str();
  plan_cmd->add_option("--goal", plan.goal, "Goal X Y (point-rrt)")->expected(2);

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score a trajectory against a reference");
  eval_cmd->add_option("--trajectory", eval.trajectory, "Planned trajectory JSON")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--truth", eval.truth, "Reference trajectory JSON")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--radii", eval.radii, "Sampling radii in meters")->required()->delimiter(',');
  eval_cmd->add_option("--threshold", eval.threshold, "Hit threshold in meters")
      ->required()
      ->check(CLI::PositiveNumber);

  ExperimentArgs exp;
  CLI::App* exp_cmd = app.add_subcommand("experiment", "Run an experiment harness");
  exp_cmd->add_option("harness", exp.harness, "rotation or ablation")
      ->required()
      ->check(CLI::IsMember({"rotation", "ablation"}));
  exp_cmd->add_option("--config", exp.config, "Harness config JSON")->check(CLI::ExistingFile);
  exp_cmd->add_option("--step", exp.step, "Rotation step in degrees")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--threads", exp.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::Range(1, 1024));

  RenderArgs render;
  CLI::App* render_cmd = app.add_subcommand("render", "Render inputs to SVG");
  render_cmd->add_option("--occupancy", render.occupancy, "Occupancy OFG1 file")->check(CLI::ExistingFile);
  render_cmd->add_option("--field", render.field, "Field OFG1 file")->check(CLI::ExistingFile);
  render_cmd->add_option("--trajectory", render.trajectories, "Trajectory JSON (repeatable)")
      ->check(CLI::ExistingFile);
  render_cmd->add_option("--arrows", render.arrows, "Arrow glyph every N cells")
      ->check(CLI::Range(1, 1 << 20));
  render_cmd->add_option("--scale", render.scale, "Pixels per cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  render_cmd->add_option("--name", render.name, "Output file name")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (seed_opt->count() > 0) g.seed = seed_value;

  try {
    std::error_code ec;
    std::filesystem::create_directories(g.out, ec);
    if (ec) throw Failure{ORF_IO_ERROR, "cannot create output directory '" + g.out + "': " + ec.message()};
    const CLI::App* sub = app.get_subcommands().front();
    write_config_echo(g, *sub, sub->get_name());
    if (sub == scene_cmd) return run_scene(g, scene);
    if (sub == field_cmd) return run_field(g, field);
    if (sub == plan_cmd) return run_plan(g, plan);
    if (sub == eval_cmd) return run_eval(g, eval);
    if (sub == exp_cmd) return run_experiment(g, exp);
    if (sub == render_cmd) {
      if (render.occupancy.empty() && render.field.empty() && render.trajectories.empty()) {
        usage_error("render needs at least one of --occupancy, --field, --trajectory");
      }
      return run_render(g, render);
    }
    usage_error("unknown subcommand");
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.status == ORF_INTERNAL_ERROR ? kExitInternal : kExitUsage;
  }
}
