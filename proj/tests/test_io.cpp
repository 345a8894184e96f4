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

#include "orfield/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "json.hpp"

namespace orfield {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an orfield::Error";
  return ErrorCode::kInvalidArgument;
}

TEST(Ofg1, LiteralHeaderAndLittleEndianPayload) {
  const ScalarGrid s(GridGeometry(2, 1, 0.2, {-1.5, 3}), std::vector<double>{1.0, -2.0});
  const std::string bytes = encode_grid(s);
  const std::string header =
      "OFG1\nkind scalar\nwidth 2\nheight 1\nresolution 0.2\norigin -1.5 3\nchannels 1\n\n";
  ASSERT_EQ(bytes.substr(0, header.size()), header);
  const std::string payload = bytes.substr(header.size());
  // 1.0f = 0x3f800000, -2.0f = 0xc0000000.
  EXPECT_EQ(payload, std::string("\x00\x00\x80\x3f\x00\x00\x00\xc0", 8));
  const GridHeader h = peek_grid_header(bytes);
  EXPECT_EQ(h.kind, GridKind::kScalar);
  EXPECT_EQ(h.geometry, s.geometry());
  EXPECT_EQ(h.channels, 1);
}

TEST(Ofg1, RoundTripsEveryKind) {
  std::mt19937_64 gen(81);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const GridGeometry g(5, 3, 0.25, {0.125, -7});

  ScalarGrid s(g);
  for (double& v : s.values()) v = static_cast<float>(u(gen) * 100);
  EXPECT_EQ(decode_scalar_grid(encode_grid(s)), s);

  OrField f(g);
  for (Vec2& v : f.values()) v = Vec2{static_cast<float>(u(gen) * 0.7), static_cast<float>(u(gen) * 0.7)};
  EXPECT_EQ(decode_orfield(encode_grid(f)), f);

  OccupancyGrid o(g);
  int k = 0;
  for (CellState& c : o.values()) c = static_cast<CellState>(k++ % 3);
  EXPECT_EQ(decode_occupancy(encode_grid(o)), o);

  BevGrid b(g);
  for (BevCell& c : b.values()) c = {0.5, 1.25, 3.0};
  EXPECT_EQ(decode_bev(encode_grid(b)), b);
  EXPECT_EQ(peek_grid_header(encode_grid(b)).channels, 3);
}

TEST(Ofg1, MalformedInputs) {
  const OccupancyGrid o(GridGeometry(2, 2, 1.0), CellState::kFree);
  const std::string good = encode_grid(o);
  EXPECT_EQ(code_of([&] { decode_occupancy("OFG2\n"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([&] { decode_orfield(good); }), ErrorCode::kParse);            // wrong kind
  EXPECT_EQ(code_of([&] { decode_occupancy(good.substr(0, good.size() - 1)); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([&] { decode_occupancy(good + "x"); }), ErrorCode::kParse);
  std::string bad_state = good;
  bad_state.replace(bad_state.size() - 4, 4, std::string("\x00\x00\x40\x40", 4));  // 3.0f
  EXPECT_EQ(code_of([&] { decode_occupancy(bad_state); }), ErrorCode::kParse);
  std::string nan = good;
  nan.replace(nan.size() - 4, 4, std::string("\x00\x00\xc0\x7f", 4));
  EXPECT_EQ(code_of([&] { decode_occupancy(nan); }), ErrorCode::kParse);
  std::string channels = good;
  channels.replace(channels.find("channels 1"), 10, "channels 2");
  EXPECT_EQ(code_of([&] { decode_occupancy(channels); }), ErrorCode::kParse);
  std::string res = good;
  res.replace(res.find("resolution 1"), 12, "resolution 0");
  EXPECT_EQ(code_of([&] { peek_grid_header(res); }), ErrorCode::kParse);
}

TEST(Ofg1, FieldNormsAboveOneAreClamped) {
  OrField f(GridGeometry(1, 1, 1.0), Vec2{0.6, 0.8});
  const OrField back = decode_orfield(encode_grid(f));
  EXPECT_LE(back(0, 0).norm(), 1.0);
  EXPECT_NEAR(back(0, 0).x, 0.6, 1e-7);
}

TEST(Files, ReadWriteAndMissingFile) {
  const auto path = std::filesystem::temp_directory_path() / "orfield_io_test.bin";
  write_file(path.string(), std::string("a\0b", 3));
  EXPECT_EQ(read_file(path.string()), std::string("a\0b", 3));
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([&] { read_file(path.string()); }), ErrorCode::kIo);
  EXPECT_EQ(code_of([&] { write_file("/nonexistent-dir/x/y", "z"); }), ErrorCode::kIo);
}

TEST(Json, RouteAndTrajectoryRoundTrip) {
  const Route r({{0, 0}, {1.5, -2.25}, {0.1, 0.3}});
  EXPECT_EQ(route_from_json(route_to_json(r)), r);
  const Trajectory t({{{0, 0}, 0.1}, {{1, 1}, -3.0}});
  EXPECT_EQ(trajectory_from_json(trajectory_to_json(t)), t);
  EXPECT_EQ(code_of([] { route_from_json(R"({"waypoints": [[0, 0]]})"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { route_from_json(R"({"points": []})"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { route_from_json("{"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { trajectory_from_json(R"({"poses": [[0, 0], [1, 1]]})"); }), ErrorCode::kParse);
}

TEST(Json, ParamsDefaultsAndValidation) {
  const PlannerParams p = params_from_json(R"({"planning_radius": 10})");
  EXPECT_EQ(p.planning_radius, 10.0);
  EXPECT_EQ(p.handle, 3.0);
  EXPECT_EQ(p.iterations, 1000);
  EXPECT_EQ(params_from_json("{}").handle, 6.0);
  PlannerParams q;
  q.rng_seed = 0xffffffffffffffffull;
  q.downsample = true;
  q.goal_bias = 0.3;
  const PlannerParams back = params_from_json(params_to_json(q));
  EXPECT_EQ(back.rng_seed, q.rng_seed);
  EXPECT_TRUE(back.downsample);
  EXPECT_EQ(back.goal_bias, 0.3);
  EXPECT_EQ(code_of([] { params_from_json(R"({"step": 1})"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { params_from_json(R"({"iterations": 0})"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { params_from_json(R"({"iterations": 1.5})"); }), ErrorCode::kParse);
}

TEST(Json, SceneSpecRoundTrip) {
  const SceneSpec s = occluded_lturn_spec(9);
  EXPECT_EQ(scene_spec_from_json(scene_spec_to_json(s)), s);
  const SceneSpec d = scene_spec_from_json(R"({"kind": "fourway"})");
  EXPECT_EQ(d.kind, SceneKind::kFourWay);
  EXPECT_EQ(d.extent, SceneSpec{}.extent);
  EXPECT_EQ(code_of([] { scene_spec_from_json(R"({"kind": "roundabout"})"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { scene_spec_from_json(R"({"noise": 1})"); }), ErrorCode::kParse);
}

TEST(Json, EvalReportNullsAndCsv) {
  EvalReport r;
  r.radii = {1, 2};
  r.hit_threshold = 1.0;
  FrameMetrics ok;
  ok.matched = 2;
  ok.ade = 0.5;
  ok.fde = 1.0;
  ok.hit = 1;
  ok.coverage = 1.0;
  FrameMetrics empty;
  empty.omitted = {1, 2};
  r.frames = {ok, empty};
  const auto j = nlohmann::json::parse(eval_report_to_json(r));
  EXPECT_TRUE(j["frames"][1]["ade"].is_null());
  EXPECT_EQ(j["frames"][1]["omitted_radii"].size(), 2u);
  EXPECT_EQ(j["aggregate"]["evaluated"], 1);
  EXPECT_EQ(j["aggregate"]["ade"], 0.5);
  const std::string csv = eval_report_to_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "frame,matched,ade,fde,hit,coverage");
  EXPECT_NE(csv.find("\n1,0,,,,\n"), std::string::npos);
}

TEST(Json, HarnessConfigs) {
  const RotationConfig rc = rotation_config_from_json(R"({"step_degrees": 30, "planner": "field-bezier"})");
  EXPECT_EQ(rc.step_degrees, 30.0);
  EXPECT_EQ(rc.planner, PlannerKind::kFieldBezier);
  EXPECT_EQ(rc.scene.kind, SceneKind::kFourWay);
  const AblationConfig ac = ablation_config_from_json(
      R"({"variants": ["dijkstra"], "radii": [5, 10]})", lturn_ablation_config(2));
  EXPECT_EQ(ac.variants, (std::vector<FieldVariant>{FieldVariant::kDijkstra}));
  EXPECT_EQ(ac.scenes.size(), 2u);
  EXPECT_EQ(ac.radii, (std::vector<double>{5, 10}));
  EXPECT_EQ(code_of([] { rotation_config_from_json(R"({"steps": 3})"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { ablation_config_from_json(R"({"planners": ["astar"]})"); }), ErrorCode::kParse);
}

TEST(Json, ExperimentSerializationIsDeterministic) {
  RotationConfig cfg;
  cfg.step_degrees = 180;
  cfg.params.iterations = 200;
  const ExperimentResult r = rotation_robustness(cfg);
  EXPECT_EQ(experiment_to_json(r), experiment_to_json(rotation_robustness(cfg)));
  const auto j = nlohmann::json::parse(experiment_to_json(r));
  EXPECT_EQ(j["harness"], "rotation");
  EXPECT_EQ(j["cases"].size(), 2u);
  const std::string csv = experiment_to_csv(r);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_EQ(csv.rfind("index,scene,variant,planner,rotation,seed,ok,error,degraded", 0), 0u);
}

}  // namespace
}  // namespace orfield
