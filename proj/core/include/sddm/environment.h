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

#ifndef SDDM_ENVIRONMENT_H_
#define SDDM_ENVIRONMENT_H_

#include <limits>
#include <variant>
#include <vector>

#include "sddm/metric.h"

namespace sddm {

struct Circle {
  Vec2 center;
  double radius = 1.0;  // > 0
};

// Zero-thickness wall between two distinct endpoints.
struct Segment {
  Vec2 a;
  Vec2 b;
};

// Lidar returns treated as a set of point obstacles.
struct PointCloud {
  std::vector<Vec2> points;
};

using Obstacle = std::variant<Circle, Segment, PointCloud>;

struct AABB {
  Vec2 min;
  Vec2 max;
};

struct Environment {
  std::vector<Obstacle> obstacles;
  AABB bounds{{0.0, 0.0}, {1.0, 1.0}};
};

struct DistanceResult {
  double dist = std::numeric_limits<double>::infinity();
  Vec2 witness;  // closest obstacle point in the Q metric
};

// |p - point| in the Q norm.
double dist_q_point(SymMat2 q, Vec2 p, Vec2 point);

DistanceResult dist_q_segment(SymMat2 q, Vec2 p, const Segment& seg);

// Minimum Q-distance from p to the closed disk. Points inside return
// distance zero with p itself as witness. The boundary minimizer solves
// the KKT system u(mu) = (Q + mu I)^-1 (Q p + mu c) with mu chosen so
// |u - c| = r, by safeguarded Newton/bisection.
DistanceResult dist_q_circle(SymMat2 q, Vec2 p, const Circle& c);

DistanceResult dist_q_cloud(SymMat2 q, Vec2 p, const PointCloud& cloud);

// Minimum over all obstacles; infinity for an empty environment.
DistanceResult dist_q_env(SymMat2 q, Vec2 p, const Environment& env);

// Smallest t in (0, max_range] with origin + t (cos a, sin a) on an
// obstacle boundary, or max_range if nothing is hit. Point clouds have
// measure zero and are never hit.
double raycast(const Environment& env, Vec2 origin, double angle,
               double max_range);

// True iff p is outside every obstacle. Walls collide within a 1e-9
// distance band; circle boundaries count as collision.
bool free_space_contains(const Environment& env, Vec2 p);

}  // namespace sddm

#endif  // SDDM_ENVIRONMENT_H_
