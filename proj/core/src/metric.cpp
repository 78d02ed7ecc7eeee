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

#include "sddm/metric.h"

#include <cmath>
#include <stdexcept>

namespace sddm {

EigSym2 eig_sym2(SymMat2 q) {
  EigSym2 out;
  const double mean = 0.5 * (q.a11 + q.a22);
  const double half_gap = 0.5 * (q.a11 - q.a22);
  const double disc = std::hypot(half_gap, q.a12);
  out.lambda_min = mean - disc;
  out.lambda_max = mean + disc;
  if (disc <= 1e-300) {
    // (Near-)isotropic: any orthonormal pair works.
    out.vmax = {1.0, 0.0};
  } else {
    // Pick the better-conditioned column of (Q - lambda_min * I); it spans
    // the lambda_max eigenspace.
    Vec2 col1{q.a11 - out.lambda_min, q.a12};
    Vec2 col2{q.a12, q.a22 - out.lambda_min};
    Vec2 v = col1.squared_norm() >= col2.squared_norm() ? col1 : col2;
    const double n = v.norm();
    out.vmax = {v.x / n, v.y / n};
  }
  out.vmin = out.vmax.perp();
  return out;
}

SymMat2 sym_sqrt(SymMat2 q) {
  if (!q.is_positive_definite()) {
    throw std::invalid_argument("sym_sqrt: matrix is not positive definite");
  }
  const EigSym2 e = eig_sym2(q);
  const double s1 = std::sqrt(e.lambda_min);
  const double s2 = std::sqrt(e.lambda_max);
  const Vec2 u = e.vmin;
  const Vec2 w = e.vmax;
  return {s1 * u.x * u.x + s2 * w.x * w.x,
          s1 * u.x * u.y + s2 * w.x * w.y,
          s1 * u.y * u.y + s2 * w.y * w.y};
}

DirectionalMatrix directional_matrix(Vec2 v, double c1, double c2) {
  if (!std::isfinite(c1) || !std::isfinite(c2) || !v.is_finite()) {
    throw std::invalid_argument("directional_matrix: non-finite input");
  }
  if (c1 <= 0.0 || c2 <= c1) {
    throw std::invalid_argument("directional_matrix: requires 0 < c1 < c2");
  }
  DirectionalMatrix out;
  out.c1 = c1;
  out.c2 = c2;
  out.dir = v;
  const double vv = v.squared_norm();
  if (std::sqrt(vv) < kZeroDirectionThreshold) {
    out.q = SymMat2::scaled_identity(c1);
    out.dir = {0.0, 0.0};
    return out;
  }
  const double w = (c1 - c2) / vv;
  out.q = {c2 + w * v.x * v.x, w * v.x * v.y, c2 + w * v.y * v.y};
  return out;
}

bool ellipsoid_contains(const Ellipsoid& e, Vec2 p) {
  return quad_norm_sq(e.q, p - e.center) <= e.level + kMembershipTolerance;
}

}  // namespace sddm
