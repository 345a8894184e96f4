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

#include "orfield/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace orfield {
namespace {

constexpr double kFallbackResolution = 0.2;
constexpr double kFallbackMargin = 1.0;

// Trajectory stroke colors, cycled.
constexpr std::array<const char*, 6> kPalette = {"#d62728", "#1f77b4", "#2ca02c",
                                                 "#9467bd", "#ff7f0e", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  // Avoid "-0.000" so equal drawings stay byte-identical.
  if (std::string_view(buf) == "-0.000") return "0.000";
  return buf;
}

std::string hex_color(int r, int g, int b) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

// Hue from the vector angle, value from its norm.
std::string field_color(Vec2 v) {
  const double n = std::min(v.norm(), 1.0);
  if (n <= 0.0) return "#000000";
  double hue = std::atan2(v.y, v.x) / kTwoPi;
  if (hue < 0.0) hue += 1.0;
  const double h6 = hue * 6.0;
  const int sector = std::min(static_cast<int>(h6), 5);
  const double f = h6 - sector;
  const double p = 0.0, q = n * (1.0 - f), t = n * f;
  double r = 0, g = 0, b = 0;
  switch (sector) {
    case 0: r = n, g = t, b = p; break;
    case 1: r = q, g = n, b = p; break;
    case 2: r = p, g = n, b = t; break;
    case 3: r = p, g = q, b = n; break;
    case 4: r = t, g = p, b = n; break;
    default: r = n, g = p, b = q; break;
  }
  const auto byte = [](double c) { return static_cast<int>(std::lround(std::clamp(c, 0.0, 1.0) * 255.0)); };
  return hex_color(byte(r), byte(g), byte(b));
}

const char* occupancy_color(CellState s) {
  switch (s) {
    case CellState::kFree: return "#ffffff";
    case CellState::kObstacle: return "#303030";
    case CellState::kUnknown: return "#9a9a9a";
  }
  return "#ff00ff";
}

// Canvas in cell units: x right, y down, row 0 at the bottom.
struct Canvas {
  GridGeometry geometry;
  double svg_x(double wx) const { return (wx - geometry.origin().x) / geometry.resolution() + 0.5; }
  double svg_y(double wy) const {
    return geometry.height() - ((wy - geometry.origin().y) / geometry.resolution() + 0.5);
  }
};

// Emits one rect per horizontal run of equal colors.
template <typename ColorOf>
void emit_runs(std::string& out, const GridGeometry& g, ColorOf&& color_of) {
  for (int row = g.height() - 1; row >= 0; --row) {
    const int y = g.height() - 1 - row;
    int col = 0;
    while (col < g.width()) {
      const std::string c = color_of(Cell{col, row});
      int end = col + 1;
      while (end < g.width() && color_of(Cell{end, row}) == c) ++end;
      out += "<rect x=\"" + std::to_string(col) + "\" y=\"" + std::to_string(y) + "\" width=\"" +
             std::to_string(end - col) + "\" height=\"1\" fill=\"" + c + "\"/>\n";
      col = end;
    }
  }
}

Canvas canvas_for(const RenderInputs& in) {
  if (in.occupancy) return {in.occupancy->geometry()};
  if (in.field) return {in.field->geometry()};
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x;
  for (const Trajectory* t : in.trajectories) {
    for (const Pose& p : t->poses()) {
      lo_x = std::min(lo_x, p.position.x);
      lo_y = std::min(lo_y, p.position.y);
      hi_x = std::max(hi_x, p.position.x);
      hi_y = std::max(hi_y, p.position.y);
    }
  }
  lo_x -= kFallbackMargin;
  lo_y -= kFallbackMargin;
  const int w = static_cast<int>(std::ceil((hi_x + kFallbackMargin - lo_x) / kFallbackResolution)) + 1;
  const int h = static_cast<int>(std::ceil((hi_y + kFallbackMargin - lo_y) / kFallbackResolution)) + 1;
  return {GridGeometry(w, h, kFallbackResolution, {lo_x, lo_y})};
}

}  // namespace

void RenderOptions::validate() const {
  if (arrow_stride && *arrow_stride <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "arrow stride must be positive");
  }
  if (!(pixels_per_cell > 0.0) || !std::isfinite(pixels_per_cell)) {
    throw Error(ErrorCode::kInvalidArgument, "pixels_per_cell must be positive");
  }
  if (!(field_opacity > 0.0 && field_opacity <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "field_opacity must be in (0, 1]");
  }
}

std::string render_svg(const RenderInputs& in, const RenderOptions& opt) {
  opt.validate();
  if (!in.occupancy && !in.field && in.trajectories.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "nothing to render");
  }
  if (in.occupancy && in.field && !(in.occupancy->geometry() == in.field->geometry())) {
    throw Error(ErrorCode::kGeometryMismatch, "occupancy and field geometries differ");
  }
  for (const Trajectory* t : in.trajectories) {
    if (t == nullptr) throw Error(ErrorCode::kInvalidArgument, "null trajectory");
  }
  const Canvas canvas = canvas_for(in);
  const GridGeometry& g = canvas.geometry;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(g.width() * opt.pixels_per_cell) +
         "\" height=\"" + fmt(g.height() * opt.pixels_per_cell) + "\" viewBox=\"0 0 " +
         std::to_string(g.width()) + " " + std::to_string(g.height()) +
         "\" shape-rendering=\"crispEdges\">\n";

  if (in.occupancy) {
    out += "<g id=\"occupancy\">\n";
    emit_runs(out, g, [&](Cell c) { return std::string(occupancy_color((*in.occupancy)(c))); });
    out += "</g>\n";
  }
  if (in.field) {
    out += "<g id=\"field\"";
    if (in.occupancy) out += " opacity=\"" + fmt(opt.field_opacity) + "\"";
    out += ">\n";
    emit_runs(out, g, [&](Cell c) { return field_color((*in.field)(c)); });
    out += "</g>\n";
    if (opt.arrow_stride) {
      const int s = *opt.arrow_stride;
      const double len = 0.45 * s;
      out += "<g id=\"arrows\" stroke=\"#000000\" stroke-width=\"" + fmt(std::max(0.05 * s, 0.1)) +
             "\" fill=\"none\">\n";
      for (int row = s / 2; row < g.height(); row += s) {
        for (int col = s / 2; col < g.width(); col += s) {
          const Vec2 v = (*in.field)(col, row);
          if (v.norm() <= 0.0) continue;
          const Vec2 c = g.cell_center({col, row});
          const double x0 = canvas.svg_x(c.x), y0 = canvas.svg_y(c.y);
          const double x1 = x0 + len * v.x, y1 = y0 - len * v.y;
          // Two barbs at +-150 degrees from the shaft.
          const Vec2 back = rotate(Vec2{v.x, -v.y}, kPi * 5.0 / 6.0) * (0.4 * len);
          const Vec2 back2 = rotate(Vec2{v.x, -v.y}, -kPi * 5.0 / 6.0) * (0.4 * len);
          out += "<path d=\"M" + fmt(x0) + " " + fmt(y0) + "L" + fmt(x1) + " " + fmt(y1) + "M" +
                 fmt(x1 + back.x) + " " + fmt(y1 + back.y) + "L" + fmt(x1) + " " + fmt(y1) + "L" +
                 fmt(x1 + back2.x) + " " + fmt(y1 + back2.y) + "\"/>\n";
        }
      }
      out += "</g>\n";
    }
  }
  if (!in.trajectories.empty()) {
    out += "<g id=\"trajectories\" fill=\"none\" stroke-width=\"" +
           fmt(std::max(0.15 / g.resolution(), 0.5)) + "\" stroke-linejoin=\"round\">\n";
    for (std::size_t i = 0; i < in.trajectories.size(); ++i) {
      out += "<polyline stroke=\"" + std::string(kPalette[i % kPalette.size()]) + "\" points=\"";
      bool first = true;
      for (const Pose& p : in.trajectories[i]->poses()) {
        if (!first) out += ' ';
        first = false;
        out += fmt(canvas.svg_x(p.position.x)) + "," + fmt(canvas.svg_y(p.position.y));
      }
      out += "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace orfield
