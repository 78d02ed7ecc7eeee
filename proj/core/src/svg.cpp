// Copyright 2026 The sddm-governor Authors
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

#include "sddm/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sddm {
namespace {

constexpr double kScale = 40.0;  // px per meter

struct Frame {
  AABB bounds;
  double x(double wx) const { return (wx - bounds.min.x) * kScale; }
  double y(double wy) const { return (bounds.max.y - wy) * kScale; }
};

void append(std::string& out, const char* fmt, auto... args) {
  char buf[1024];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  out += buf;
}

void draw_zone_ellipse(std::string& out, const Frame& f, Vec2 center,
                       SymMat2 q, double level, const char* stroke) {
  if (level <= 0.0 || level > 1e17) return;
  const EigSym2 e = eig_sym2(q);
  // Semi-axis sqrt(level / lambda) along each eigenvector.
  const double r_major = std::sqrt(level / e.lambda_min) * kScale;
  const double r_minor = std::sqrt(level / e.lambda_max) * kScale;
  const double angle_deg =
      -std::atan2(e.vmin.y, e.vmin.x) * 180.0 / M_PI;  // y axis is flipped
  append(out,
         "  <ellipse cx=\"0\" cy=\"0\" rx=\"%.2f\" ry=\"%.2f\" "
         "transform=\"translate(%.2f %.2f) rotate(%.2f)\" fill=\"none\" "
         "stroke=\"%s\" stroke-opacity=\"0.5\"/>\n",
         r_major, r_minor, f.x(center.x), f.y(center.y), angle_deg, stroke);
}

}  // namespace

std::string render_svg(const Environment& env, const PathSpec& path,
                       const std::vector<PlotSeries>& series) {
  const Frame f{env.bounds};
  const double w = (env.bounds.max.x - env.bounds.min.x) * kScale;
  const double h = (env.bounds.max.y - env.bounds.min.y) * kScale;

  std::string out;
  append(out,
         "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
         "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
         w, h, w, h);
  append(out,
         "  <rect x=\"0\" y=\"0\" width=\"%.0f\" height=\"%.0f\" "
         "fill=\"#fafafa\"/>\n",
         w, h);

  for (const Obstacle& obs : env.obstacles) {
    if (const Circle* c = std::get_if<Circle>(&obs)) {
      append(out,
             "  <circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"#666\"/>\n",
             f.x(c->center.x), f.y(c->center.y), c->radius * kScale);
    } else if (const Segment* s = std::get_if<Segment>(&obs)) {
      append(out,
             "  <line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
             "stroke=\"#c33\" stroke-width=\"3\"/>\n",
             f.x(s->a.x), f.y(s->a.y), f.x(s->b.x), f.y(s->b.y));
    } else if (const PointCloud* pc = std::get_if<PointCloud>(&obs)) {
      for (const Vec2& p : pc->points) {
        append(out,
               "  <circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.5\" "
               "fill=\"#c33\"/>\n",
               f.x(p.x), f.y(p.y));
      }
    }
  }

  if (!path.empty()) {
    std::string pts;
    for (const Vec2& p : path.waypoints()) {
      append(pts, "%.2f,%.2f ", f.x(p.x), f.y(p.y));
    }
    append(out,
           "  <polyline points=\"%s\" fill=\"none\" stroke=\"#333\" "
           "stroke-dasharray=\"6 4\"/>\n",
           pts.c_str());
  }

  for (const PlotSeries& s : series) {
    if (s.log == nullptr || s.log->rows.empty()) continue;
    const auto& rows = s.log->rows;
    std::string pts;
    for (const LogRow& r : rows) {
      append(pts, "%.2f,%.2f ", f.x(r.robot_pos.x), f.y(r.robot_pos.y));
    }
    append(out,
           "  <polyline points=\"%s\" fill=\"none\" stroke=\"%s\" "
           "stroke-width=\"2\"/>\n",
           pts.c_str(), s.color.c_str());

    const std::size_t zone_stride = std::max<std::size_t>(1, rows.size() / 25);
    for (std::size_t i = 0; i < rows.size(); i += zone_stride) {
      const LogRow& r = rows[i];
      SymMat2 q = SymMat2::identity();
      if (s.controller == ControllerKind::kSddm) {
        q = directional_matrix(r.gov_pos - r.robot_pos, s.params.c1,
                               s.params.c2)
                .q;
      }
      draw_zone_ellipse(out, f, r.gov_pos, q, std::max(0.0, r.delta_e),
                        "#cc0");
    }

    const std::size_t arrow_stride = std::max<std::size_t>(1, rows.size() / 40);
    for (std::size_t i = 0; i < rows.size(); i += arrow_stride) {
      const LogRow& r = rows[i];
      const Vec2 tip = r.robot_pos + 0.4 * r.robot_vel;
      append(out,
             "  <line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
             "stroke=\"#c3c\" stroke-width=\"1\"/>\n",
             f.x(r.robot_pos.x), f.y(r.robot_pos.y), f.x(tip.x), f.y(tip.y));
    }
  }

  out += "</svg>\n";
  return out;
}

}  // namespace sddm
