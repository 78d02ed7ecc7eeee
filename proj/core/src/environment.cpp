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

#include "sddm/environment.h"

#include <algorithm>
#include <cmath>

namespace sddm {
namespace {

constexpr double kWallContactBand = 1e-9;
constexpr double kRayTol = 1e-9;

double point_segment_dist(Vec2 p, const Segment& seg) {
  const Vec2 d = seg.b - seg.a;
  const double len_sq = d.squared_norm();
  double t = len_sq > 0.0 ? (p - seg.a).dot(d) / len_sq : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (seg.a + t * d)).norm();
}

// Solves (Q + mu I) u = Q p + mu c for the 2x2 symmetric system.
Vec2 kkt_point(SymMat2 q, double mu, Vec2 qp, Vec2 c) {
  const SymMat2 m{q.a11 + mu, q.a12, q.a22 + mu};
  const Vec2 rhs = qp + mu * c;
  const double det = m.det();
  return {(m.a22 * rhs.x - m.a12 * rhs.y) / det,
          (m.a11 * rhs.y - m.a12 * rhs.x) / det};
}

}  // namespace

double dist_q_point(SymMat2 q, Vec2 p, Vec2 point) {
  return std::sqrt(quad_norm_sq(q, p - point));
}

DistanceResult dist_q_segment(SymMat2 q, Vec2 p, const Segment& seg) {
  // |p - a - t d|_Q^2 is quadratic in t; clamp the unconstrained
  // minimizer to [0, 1].
  const Vec2 d = seg.b - seg.a;
  const Vec2 w = p - seg.a;
  const double denom = quad_norm_sq(q, d);
  double t = denom > 0.0 ? w.dot(q.apply(d)) / denom : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Vec2 witness = seg.a + t * d;
  return {dist_q_point(q, p, witness), witness};
}

DistanceResult dist_q_circle(SymMat2 q, Vec2 p, const Circle& c) {
  const double euclid = (p - c.center).norm();
  if (euclid <= c.radius) {
    return {0.0, p};
  }
  const Vec2 qp = q.apply(p);
  const auto boundary_gap = [&](double mu) {
    return (kkt_point(q, mu, qp, c.center) - c.center).norm() - c.radius;
  };

  // |u(mu) - c| decreases monotonically from |p - c| (mu = 0) to 0
  // (mu -> inf); grow the bracket geometrically, then safeguarded
  // Newton/bisection.
  double lo = 0.0;
  double hi = std::max(1.0, q.trace());
  while (boundary_gap(hi) > 0.0) {
    lo = hi;
    hi *= 4.0;
  }
  double mu = 0.5 * (lo + hi);
  const double tol = 1e-10 * c.radius;
  for (int it = 0; it < 200; ++it) {
    const double g = boundary_gap(mu);
    if (std::abs(g) <= tol) break;
    if (g > 0.0) {
      lo = mu;
    } else {
      hi = mu;
    }
    // Newton step from finite-difference slope of the bracket.
    const double h = 1e-6 * (1.0 + mu);
    const double slope = (boundary_gap(mu + h) - g) / h;
    double next = slope < 0.0 ? mu - g / slope : mu;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    mu = next;
  }
  const Vec2 witness = kkt_point(q, mu, qp, c.center);
  return {dist_q_point(q, p, witness), witness};
}

DistanceResult dist_q_cloud(SymMat2 q, Vec2 p, const PointCloud& cloud) {
  DistanceResult best;
  for (const Vec2& pt : cloud.points) {
    const double d = dist_q_point(q, p, pt);
    if (d < best.dist) {
      best = {d, pt};
    }
  }
  return best;
}

DistanceResult dist_q_env(SymMat2 q, Vec2 p, const Environment& env) {
  DistanceResult best;
  for (const Obstacle& obs : env.obstacles) {
    const DistanceResult r = std::visit(
        [&](const auto& shape) -> DistanceResult {
          using T = std::decay_t<decltype(shape)>;
          if constexpr (std::is_same_v<T, Circle>) {
            return dist_q_circle(q, p, shape);
          } else if constexpr (std::is_same_v<T, Segment>) {
            return dist_q_segment(q, p, shape);
          } else {
            return dist_q_cloud(q, p, shape);
          }
        },
        obs);
    if (r.dist < best.dist) best = r;
  }
  return best;
}

double raycast(const Environment& env, Vec2 origin, double angle,
               double max_range) {
  const Vec2 dir{std::cos(angle), std::sin(angle)};
  double best = max_range;
  for (const Obstacle& obs : env.obstacles) {
    if (const Circle* c = std::get_if<Circle>(&obs)) {
      const Vec2 oc = origin - c->center;
      const double b = oc.dot(dir);
      const double disc = b * b - (oc.squared_norm() - c->radius * c->radius);
      if (disc < 0.0) continue;
      const double sq = std::sqrt(disc);
      for (double t : {-b - sq, -b + sq}) {
        if (t > kRayTol && t < best) best = t;
      }
    } else if (const Segment* s = std::get_if<Segment>(&obs)) {
      // origin + t dir = a + u (b - a)
      const Vec2 e = s->b - s->a;
      const double det = dir.x * (-e.y) - dir.y * (-e.x);
      if (std::abs(det) < 1e-15) continue;
      const Vec2 w = s->a - origin;
      const double t = (w.x * (-e.y) - w.y * (-e.x)) / det;
      const double u = (dir.x * w.y - dir.y * w.x) / det;
      if (t > kRayTol && u >= -kRayTol && u <= 1.0 + kRayTol && t < best) {
        best = t;
      }
    }
    // Point clouds are never hit by rays.
  }
  return best;
}

bool free_space_contains(const Environment& env, Vec2 p) {
  for (const Obstacle& obs : env.obstacles) {
    if (const Circle* c = std::get_if<Circle>(&obs)) {
      if ((p - c->center).norm() <= c->radius) return false;
    } else if (const Segment* s = std::get_if<Segment>(&obs)) {
      if (point_segment_dist(p, *s) <= kWallContactBand) return false;
    } else if (const PointCloud* pc = std::get_if<PointCloud>(&obs)) {
      for (const Vec2& pt : pc->points) {
        if ((p - pt).norm() <= kWallContactBand) return false;
      }
    }
  }
  return true;
}

}  // namespace sddm
