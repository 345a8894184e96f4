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

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace orfield {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::kParse, what); }

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// OFG1

constexpr std::string_view kMagic = "OFG1";

int channels_of(GridKind k) {
  switch (k) {
    case GridKind::kScalar: return 1;
    case GridKind::kOrField: return 2;
    case GridKind::kOccupancy: return 1;
    case GridKind::kBev: return 3;
  }
  return 1;
}

std::optional<GridKind> parse_kind(std::string_view s) {
  for (GridKind k : {GridKind::kScalar, GridKind::kOrField, GridKind::kOccupancy, GridKind::kBev}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::string encode_header(GridKind kind, const GridGeometry& g) {
  std::string out;
  out += kMagic;
  out += "\nkind ";
  out += to_string(kind);
  out += "\nwidth " + std::to_string(g.width());
  out += "\nheight " + std::to_string(g.height());
  out += "\nresolution " + format_double(g.resolution());
  out += "\norigin " + format_double(g.origin().x) + " " + format_double(g.origin().y);
  out += "\nchannels " + std::to_string(channels_of(kind));
  out += "\n\n";
  return out;
}

void append_float(std::string& out, double v) {
  static_assert(sizeof(float) == 4);
  const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<char>((bits >> shift) & 0xffu));
  }
}

struct Decoded {
  GridHeader header;
  std::vector<float> values;
};

// Reads "key value..." from one header line.
std::istringstream header_line(std::string_view& rest, std::string_view key) {
  const std::size_t nl = rest.find('\n');
  if (nl == std::string_view::npos) parse_error("truncated OFG1 header");
  std::string line(rest.substr(0, nl));
  rest.remove_prefix(nl + 1);
  std::istringstream is(line);
  std::string k;
  if (!(is >> k) || k != key) parse_error("OFG1 header: expected '" + std::string(key) + "'");
  return is;
}

template <typename T>
T header_value(std::istringstream& is, std::string_view key) {
  T v{};
  if (!(is >> v)) parse_error("OFG1 header: bad value for '" + std::string(key) + "'");
  return v;
}

void expect_line_end(std::istringstream& is, std::string_view key) {
  std::string extra;
  if (is >> extra) parse_error("OFG1 header: trailing text after '" + std::string(key) + "'");
}

std::pair<GridHeader, std::string_view> parse_header(std::string_view bytes) {
  std::string_view rest = bytes;
  {
    const std::size_t nl = rest.find('\n');
    if (nl == std::string_view::npos || rest.substr(0, nl) != kMagic) parse_error("not an OFG1 file");
    rest.remove_prefix(nl + 1);
  }
  GridHeader h;
  {
    auto is = header_line(rest, "kind");
    const auto name = header_value<std::string>(is, "kind");
    const auto kind = parse_kind(name);
    if (!kind) parse_error("OFG1 header: unknown kind '" + name + "'");
    expect_line_end(is, "kind");
    h.kind = *kind;
  }
  auto ws = header_line(rest, "width");
  const long long width = header_value<long long>(ws, "width");
  expect_line_end(ws, "width");
  auto hs = header_line(rest, "height");
  const long long height = header_value<long long>(hs, "height");
  expect_line_end(hs, "height");
  auto rs = header_line(rest, "resolution");
  const double resolution = header_value<double>(rs, "resolution");
  expect_line_end(rs, "resolution");
  auto os = header_line(rest, "origin");
  const double ox = header_value<double>(os, "origin");
  const double oy = header_value<double>(os, "origin");
  expect_line_end(os, "origin");
  auto cs = header_line(rest, "channels");
  h.channels = header_value<int>(cs, "channels");
  expect_line_end(cs, "channels");
  if (rest.empty() || rest.front() != '\n') parse_error("OFG1 header: missing blank line");
  rest.remove_prefix(1);

  constexpr long long kMaxSide = 1 << 16;
  if (width < 1 || height < 1 || width > kMaxSide || height > kMaxSide) {
    parse_error("OFG1 header: bad raster size");
  }
  if (h.channels != channels_of(h.kind)) parse_error("OFG1 header: wrong channel count for kind");
  try {
    h.geometry = GridGeometry(static_cast<int>(width), static_cast<int>(height), resolution, {ox, oy});
  } catch (const Error& e) {
    parse_error(std::string("OFG1 header: ") + e.what());
  }
  return {h, rest};
}

Decoded decode(std::string_view bytes, GridKind expected) {
  auto [header, payload] = parse_header(bytes);
  if (header.kind != expected) {
    parse_error("OFG1 kind is " + std::string(to_string(header.kind)) + ", expected " +
                std::string(to_string(expected)));
  }
  const std::size_t count = header.geometry.cell_count() * static_cast<std::size_t>(header.channels);
  if (payload.size() != count * 4) parse_error("OFG1 payload size does not match header");
  Decoded out{header, std::vector<float>(count)};
  const auto* p = reinterpret_cast<const unsigned char*>(payload.data());
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t bits = static_cast<std::uint32_t>(p[4 * i]) |
                               static_cast<std::uint32_t>(p[4 * i + 1]) << 8 |
                               static_cast<std::uint32_t>(p[4 * i + 2]) << 16 |
                               static_cast<std::uint32_t>(p[4 * i + 3]) << 24;
    out.values[i] = std::bit_cast<float>(bits);
    if (!std::isfinite(out.values[i])) parse_error("OFG1 payload holds a non-finite value");
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON helpers

Json parse_json(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    parse_error(std::string(what) + ": " + e.what());
  }
}

double number_of(const Json& j, const std::string& what) {
  if (!j.is_number()) parse_error(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_error(what + " must be finite");
  return v;
}

Vec2 point_of(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) parse_error(what + " must be [x, y]");
  return {number_of(j[0], what), number_of(j[1], what)};
}

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const char* what) {
  if (!obj.is_object()) parse_error(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) parse_error(std::string(what) + ": unknown key '" + key + "'");
  }
}

int int_of(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) parse_error(what + " must be an integer");
  const auto v = j.get<long long>();
  if (v < INT32_MIN || v > INT32_MAX) parse_error(what + " out of range");
  return static_cast<int>(v);
}

std::uint64_t seed_of(const Json& j, const std::string& what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::uint64_t>(j.get<long long>());
  parse_error(what + " must be a non-negative integer");
}

bool bool_of(const Json& j, const std::string& what) {
  if (!j.is_boolean()) parse_error(what + " must be a boolean");
  return j.get<bool>();
}

// Wraps library validation failures as parse errors of the given document.
template <typename T>
void validated(const T& value, const char* what) {
  try {
    value.validate();
  } catch (const Error& e) {
    parse_error(std::string(what) + ": " + e.what());
  }
}

Json nullable(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

template <typename T>
Json nullable_int(const std::optional<T>& v) {
  if (!v) return nullptr;
  return *v;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(const std::optional<double>& v) {
  return v && std::isfinite(*v) ? format_double(*v) : std::string();
}

template <typename T>
std::string csv_int(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string_view to_string(GridKind k) {
  switch (k) {
    case GridKind::kScalar: return "scalar";
    case GridKind::kOrField: return "orfield";
    case GridKind::kOccupancy: return "occupancy";
    case GridKind::kBev: return "bev";
  }
  return "unknown";
}

GridHeader peek_grid_header(std::string_view bytes) { return parse_header(bytes).first; }

std::string encode_grid(const ScalarGrid& grid) {
  std::string out = encode_header(GridKind::kScalar, grid.geometry());
  for (double v : grid.values()) append_float(out, v);
  return out;
}

std::string encode_grid(const OrField& field) {
  std::string out = encode_header(GridKind::kOrField, field.geometry());
  for (Vec2 v : field.values()) {
    append_float(out, v.x);
    append_float(out, v.y);
  }
  return out;
}

std::string encode_grid(const OccupancyGrid& occ) {
  std::string out = encode_header(GridKind::kOccupancy, occ.geometry());
  for (CellState s : occ.values()) append_float(out, static_cast<double>(static_cast<int>(s)));
  return out;
}

std::string encode_grid(const BevGrid& bev) {
  std::string out = encode_header(GridKind::kBev, bev.geometry());
  for (const BevCell& c : bev.values()) {
    append_float(out, c.intensity);
    append_float(out, c.max_height);
    append_float(out, c.count);
  }
  return out;
}

ScalarGrid decode_scalar_grid(std::string_view bytes) {
  Decoded d = decode(bytes, GridKind::kScalar);
  return ScalarGrid(d.header.geometry, std::vector<double>(d.values.begin(), d.values.end()));
}

OrField decode_orfield(std::string_view bytes) {
  Decoded d = decode(bytes, GridKind::kOrField);
  std::vector<Vec2> v(d.header.geometry.cell_count());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = {d.values[2 * i], d.values[2 * i + 1]};
    const double n = v[i].norm();
    // Single-precision rounding can push unit vectors just past 1.
    if (n > 1.0) v[i] = v[i] / n;
  }
  return OrField(d.header.geometry, std::move(v));
}

OccupancyGrid decode_occupancy(std::string_view bytes) {
  Decoded d = decode(bytes, GridKind::kOccupancy);
  std::vector<CellState> v(d.values.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const float f = d.values[i];
    if (f == 0.0f) {
      v[i] = CellState::kFree;
    } else if (f == 1.0f) {
      v[i] = CellState::kObstacle;
    } else if (f == 2.0f) {
      v[i] = CellState::kUnknown;
    } else {
      parse_error("occupancy value must be 0, 1 or 2");
    }
  }
  return OccupancyGrid(d.header.geometry, std::move(v));
}

BevGrid decode_bev(std::string_view bytes) {
  Decoded d = decode(bytes, GridKind::kBev);
  std::vector<BevCell> v(d.header.geometry.cell_count());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = {d.values[3 * i], d.values[3 * i + 1], d.values[3 * i + 2]};
  }
  return BevGrid(d.header.geometry, std::move(v));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::string out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  return out;
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
}

std::string route_to_json(const Route& route) {
  Json pts = Json::array();
  for (Vec2 w : route.waypoints()) pts.push_back({w.x, w.y});
  return dump(Json{{"waypoints", pts}});
}

Route route_from_json(std::string_view text) {
  const Json j = parse_json(text, "route");
  reject_unknown(j, {"waypoints"}, "route");
  if (!j.contains("waypoints") || !j["waypoints"].is_array()) parse_error("route needs a waypoints array");
  std::vector<Vec2> pts;
  for (const auto& w : j["waypoints"]) pts.push_back(point_of(w, "waypoint"));
  try {
    return Route(std::move(pts));
  } catch (const Error& e) {
    parse_error(std::string("route: ") + e.what());
  }
}

std::string trajectory_to_json(const Trajectory& traj) {
  Json poses = Json::array();
  for (const Pose& p : traj.poses()) poses.push_back({p.position.x, p.position.y, p.heading});
  return dump(Json{{"poses", poses}});
}

Trajectory trajectory_from_json(std::string_view text) {
  const Json j = parse_json(text, "trajectory");
  reject_unknown(j, {"poses"}, "trajectory");
  if (!j.contains("poses") || !j["poses"].is_array()) parse_error("trajectory needs a poses array");
  std::vector<Pose> poses;
  for (const auto& p : j["poses"]) {
    if (!p.is_array() || p.size() != 3) parse_error("pose must be [x, y, heading]");
    poses.push_back({{number_of(p[0], "pose x"), number_of(p[1], "pose y")}, number_of(p[2], "heading")});
  }
  try {
    return Trajectory(std::move(poses));
  } catch (const Error& e) {
    parse_error(std::string("trajectory: ") + e.what());
  }
}

std::string params_to_json(const PlannerParams& p) {
  Json j;
  j["step_size"] = p.step_size;
  j["neighbor_radius"] = p.neighbor_radius;
  j["iterations"] = p.iterations;
  j["planning_radius"] = p.planning_radius;
  j["handle"] = p.handle;
  j["candidate_count"] = p.candidate_count;
  j["smoothing_radius"] = p.smoothing_radius;
  j["rng_seed"] = p.rng_seed;
  j["sampling_margin"] = p.sampling_margin;
  j["downsample"] = p.downsample;
  j["goal_bias"] = p.goal_bias;
  return dump(j);
}

PlannerParams params_from_json(std::string_view text) {
  const Json j = parse_json(text, "planner params");
  reject_unknown(j,
                 {"step_size", "neighbor_radius", "iterations", "planning_radius", "handle",
                  "candidate_count", "smoothing_radius", "rng_seed", "sampling_margin", "downsample",
                  "goal_bias"},
                 "planner params");
  PlannerParams p;
  if (j.contains("step_size")) p.step_size = number_of(j["step_size"], "step_size");
  if (j.contains("neighbor_radius")) p.neighbor_radius = number_of(j["neighbor_radius"], "neighbor_radius");
  if (j.contains("iterations")) p.iterations = int_of(j["iterations"], "iterations");
  if (j.contains("planning_radius")) p.planning_radius = number_of(j["planning_radius"], "planning_radius");
  p.handle = j.contains("handle") ? number_of(j["handle"], "handle") : 0.3 * p.planning_radius;
  if (j.contains("candidate_count")) p.candidate_count = int_of(j["candidate_count"], "candidate_count");
  if (j.contains("smoothing_radius")) p.smoothing_radius = int_of(j["smoothing_radius"], "smoothing_radius");
  if (j.contains("rng_seed")) p.rng_seed = seed_of(j["rng_seed"], "rng_seed");
  if (j.contains("sampling_margin")) p.sampling_margin = number_of(j["sampling_margin"], "sampling_margin");
  if (j.contains("downsample")) p.downsample = bool_of(j["downsample"], "downsample");
  if (j.contains("goal_bias")) p.goal_bias = number_of(j["goal_bias"], "goal_bias");
  validated(p, "planner params");
  return p;
}

std::string scene_spec_to_json(const SceneSpec& s) {
  Json occl = Json::array();
  for (const Rect& r : s.occlusions) occl.push_back({r.min.x, r.min.y, r.max.x, r.max.y});
  Json j;
  j["kind"] = std::string(to_string(s.kind));
  j["road_half_width"] = s.road_half_width;
  j["extent"] = s.extent;
  j["resolution"] = s.resolution;
  j["junction_offset"] = s.junction_offset;
  j["occlusions"] = occl;
  j["route_noise"] = s.route_noise;
  j["rotation"] = s.rotation;
  j["rng_seed"] = s.rng_seed;
  return dump(j);
}

SceneSpec scene_spec_from_json(std::string_view text) {
  const Json j = parse_json(text, "scene spec");
  reject_unknown(j,
                 {"kind", "road_half_width", "extent", "resolution", "junction_offset", "occlusions",
                  "route_noise", "rotation", "rng_seed"},
                 "scene spec");
  SceneSpec s;
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) parse_error("scene kind must be a string");
    const auto kind = parse_scene_kind(j["kind"].get<std::string>());
    if (!kind) parse_error("unknown scene kind '" + j["kind"].get<std::string>() + "'");
    s.kind = *kind;
  }
  if (j.contains("road_half_width")) s.road_half_width = number_of(j["road_half_width"], "road_half_width");
  if (j.contains("extent")) s.extent = number_of(j["extent"], "extent");
  if (j.contains("resolution")) s.resolution = number_of(j["resolution"], "resolution");
  if (j.contains("junction_offset")) s.junction_offset = number_of(j["junction_offset"], "junction_offset");
  if (j.contains("occlusions")) {
    if (!j["occlusions"].is_array()) parse_error("occlusions must be an array");
    for (const auto& r : j["occlusions"]) {
      if (!r.is_array() || r.size() != 4) parse_error("occlusion must be [min_x, min_y, max_x, max_y]");
      const Rect rect{{number_of(r[0], "occlusion"), number_of(r[1], "occlusion")},
                      {number_of(r[2], "occlusion"), number_of(r[3], "occlusion")}};
      if (rect.min.x > rect.max.x || rect.min.y > rect.max.y) parse_error("occlusion min exceeds max");
      s.occlusions.push_back(rect);
    }
  }
  if (j.contains("route_noise")) s.route_noise = number_of(j["route_noise"], "route_noise");
  if (j.contains("rotation")) s.rotation = number_of(j["rotation"], "rotation");
  if (j.contains("rng_seed")) s.rng_seed = seed_of(j["rng_seed"], "rng_seed");
  validated(s, "scene spec");
  return s;
}

namespace {

struct Means {
  std::optional<double> ade, fde, hit, coverage;
  std::size_t evaluated = 0;
};

Means frame_means(const EvalReport& r) {
  Means m;
  double ade = 0.0, fde = 0.0, hit = 0.0, cov = 0.0;
  for (const FrameMetrics& f : r.frames) {
    if (!f.ade) continue;
    ++m.evaluated;
    ade += *f.ade;
    fde += *f.fde;
    hit += *f.hit;
    cov += *f.coverage;
  }
  if (m.evaluated > 0) {
    const double n = static_cast<double>(m.evaluated);
    m.ade = ade / n;
    m.fde = fde / n;
    m.hit = hit / n;
    m.coverage = cov / n;
  }
  return m;
}

}  // namespace

std::string eval_report_to_json(const EvalReport& r) {
  Json frames = Json::array();
  for (std::size_t i = 0; i < r.frames.size(); ++i) {
    const FrameMetrics& f = r.frames[i];
    Json fj;
    fj["frame"] = i;
    fj["matched"] = f.matched;
    fj["omitted_radii"] = f.omitted;
    fj["ade"] = nullable(f.ade);
    fj["fde"] = nullable(f.fde);
    fj["hit"] = nullable_int(f.hit);
    fj["coverage"] = nullable(f.coverage);
    frames.push_back(fj);
  }
  const Means m = frame_means(r);
  Json agg;
  agg["frames"] = r.frames.size();
  agg["evaluated"] = m.evaluated;
  agg["ade"] = nullable(m.ade);
  agg["fde"] = nullable(m.fde);
  agg["hit_rate"] = nullable(m.hit);
  agg["coverage"] = nullable(m.coverage);
  Json j;
  j["radii"] = r.radii;
  j["hit_threshold"] = r.hit_threshold;
  j["frames"] = frames;
  j["aggregate"] = agg;
  return dump(j);
}

std::string eval_report_to_csv(const EvalReport& r) {
  std::string out = "frame,matched,ade,fde,hit,coverage\n";
  for (std::size_t i = 0; i < r.frames.size(); ++i) {
    const FrameMetrics& f = r.frames[i];
    out += std::to_string(i) + "," + std::to_string(f.matched) + "," + csv_number(f.ade) + "," +
           csv_number(f.fde) + "," + csv_int(f.hit) + "," + csv_number(f.coverage) + "\n";
  }
  return out;
}

namespace {

template <typename T, typename Parse>
std::vector<T> name_list(const Json& j, const char* what, Parse&& parse) {
  if (!j.is_array()) parse_error(std::string(what) + " must be an array of names");
  std::vector<T> out;
  for (const auto& e : j) {
    if (!e.is_string()) parse_error(std::string(what) + " must be an array of names");
    const auto v = parse(e.template get<std::string>());
    if (!v) parse_error(std::string("unknown name in ") + what + ": '" + e.template get<std::string>() + "'");
    out.push_back(*v);
  }
  return out;
}

int threads_of(const Json& j) {
  const int t = int_of(j, "threads");
  if (t < 1) parse_error("threads must be >= 1");
  return t;
}

}  // namespace

RotationConfig rotation_config_from_json(std::string_view text, const RotationConfig& base) {
  const Json j = parse_json(text, "rotation config");
  reject_unknown(j, {"scene", "planner", "variant", "step_degrees", "params", "use_occupancy", "seed", "threads"},
                 "rotation config");
  RotationConfig cfg = base;
  if (j.contains("scene")) cfg.scene = scene_spec_from_json(j["scene"].dump());
  if (j.contains("planner")) {
    cfg.planner = name_list<PlannerKind>(Json::array({j["planner"]}), "planner", parse_planner).front();
  }
  if (j.contains("variant")) {
    cfg.variant = name_list<FieldVariant>(Json::array({j["variant"]}), "variant", parse_field_variant).front();
  }
  if (j.contains("step_degrees")) cfg.step_degrees = number_of(j["step_degrees"], "step_degrees");
  if (j.contains("params")) cfg.params = params_from_json(j["params"].dump());
  if (j.contains("use_occupancy")) cfg.use_occupancy = bool_of(j["use_occupancy"], "use_occupancy");
  if (j.contains("seed")) cfg.seed = seed_of(j["seed"], "seed");
  if (j.contains("threads")) cfg.threads = threads_of(j["threads"]);
  return cfg;
}

AblationConfig ablation_config_from_json(std::string_view text, const AblationConfig& base) {
  const Json j = parse_json(text, "ablation config");
  reject_unknown(j,
                 {"scenes", "variants", "planners", "radii", "hit_threshold", "params", "point_params",
                  "use_occupancy", "seed", "threads"},
                 "ablation config");
  AblationConfig cfg = base;
  if (j.contains("scenes")) {
    if (!j["scenes"].is_array()) parse_error("scenes must be an array");
    cfg.scenes.clear();
    for (const auto& s : j["scenes"]) cfg.scenes.push_back(scene_spec_from_json(s.dump()));
  }
  if (j.contains("variants")) cfg.variants = name_list<FieldVariant>(j["variants"], "variants", parse_field_variant);
  if (j.contains("planners")) cfg.planners = name_list<PlannerKind>(j["planners"], "planners", parse_planner);
  if (j.contains("radii")) {
    if (!j["radii"].is_array()) parse_error("radii must be an array");
    cfg.radii.clear();
    for (const auto& r : j["radii"]) cfg.radii.push_back(number_of(r, "radius"));
  }
  if (j.contains("hit_threshold")) cfg.hit_threshold = number_of(j["hit_threshold"], "hit_threshold");
  if (j.contains("params")) cfg.params = params_from_json(j["params"].dump());
  if (j.contains("point_params")) cfg.point_params = params_from_json(j["point_params"].dump());
  if (j.contains("use_occupancy")) cfg.use_occupancy = bool_of(j["use_occupancy"], "use_occupancy");
  if (j.contains("seed")) cfg.seed = seed_of(j["seed"], "seed");
  if (j.contains("threads")) cfg.threads = threads_of(j["threads"]);
  return cfg;
}

std::string experiment_to_json(const ExperimentResult& r) {
  Json config = Json::object();
  for (const auto& [k, v] : r.config) config[k] = v;
  Json agg = Json::object();
  for (const auto& [k, v] : r.aggregates) agg[k] = nullable(v);
  Json cases = Json::array();
  for (const CaseRecord& c : r.cases) {
    Json cj;
    cj["index"] = c.index;
    cj["scene"] = c.scene;
    cj["variant"] = c.variant;
    cj["planner"] = c.planner;
    cj["rotation"] = c.rotation;
    cj["seed"] = c.seed;
    cj["ok"] = c.ok;
    cj["error"] = c.error;
    cj["degraded"] = c.degraded;
    cj["energy"] = nullable(c.energy);
    cj["matched"] = c.matched;
    cj["ade"] = nullable(c.ade);
    cj["fde"] = nullable(c.fde);
    cj["hit"] = nullable_int(c.hit);
    cj["coverage"] = nullable(c.coverage);
    cj["in_free_space"] = nullable(c.in_free_space);
    cj["commanded_branch"] = nullable_int(c.commanded_branch);
    cj["branch"] = nullable_int(c.branch);
    cases.push_back(cj);
  }
  Json j;
  j["harness"] = r.harness;
  j["config"] = config;
  j["aggregates"] = agg;
  j["cases"] = cases;
  return dump(j);
}

std::string experiment_to_csv(const ExperimentResult& r) {
  std::string out =
      "index,scene,variant,planner,rotation,seed,ok,error,degraded,energy,matched,ade,fde,hit,"
      "coverage,in_free_space,commanded_branch,branch\n";
  for (const CaseRecord& c : r.cases) {
    out += std::to_string(c.index) + "," + csv_field(c.scene) + "," + csv_field(c.variant) + "," +
           csv_field(c.planner) + "," + format_double(c.rotation) + "," + std::to_string(c.seed) + "," +
           (c.ok ? "1" : "0") + "," + csv_field(c.error) + "," + (c.degraded ? "1" : "0") + "," +
           csv_number(c.energy) + "," + std::to_string(c.matched) + "," + csv_number(c.ade) + "," +
           csv_number(c.fde) + "," + csv_int(c.hit) + "," + csv_number(c.coverage) + "," +
           csv_number(c.in_free_space) + "," + csv_int(c.commanded_branch) + "," + csv_int(c.branch) +
           "\n";
  }
  return out;
}

}  // namespace orfield
