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

#ifndef SDDM_METRIC_H_
#define SDDM_METRIC_H_

#include <cmath>

namespace sddm {

// Below this magnitude a direction vector is treated as zero and the
// directional matrix degenerates to c1 * I.
inline constexpr double kZeroDirectionThreshold = 1e-9;

// Absolute slack on the quadratic form in ellipsoid membership tests.
// Root-finding downstream lands points numerically on boundaries.
inline constexpr double kMembershipTolerance = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double a) const { return {a * x, a * y}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  constexpr double squared_norm() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }
  // Counter-clockwise perpendicular.
  constexpr Vec2 perp() const { return {-y, x}; }
  bool is_finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline constexpr Vec2 operator*(double a, Vec2 v) { return {a * v.x, a * v.y}; }

// Symmetric 2x2 matrix; only the upper triangle is stored.
struct SymMat2 {
  double a11 = 1.0;
  double a12 = 0.0;
  double a22 = 1.0;

  static constexpr SymMat2 identity() { return {1.0, 0.0, 1.0}; }
  static constexpr SymMat2 scaled_identity(double a) { return {a, 0.0, a}; }

  constexpr Vec2 apply(Vec2 v) const {
    return {a11 * v.x + a12 * v.y, a12 * v.x + a22 * v.y};
  }
  constexpr double det() const { return a11 * a22 - a12 * a12; }
  constexpr double trace() const { return a11 + a22; }
  constexpr SymMat2 operator+(SymMat2 o) const {
    return {a11 + o.a11, a12 + o.a12, a22 + o.a22};
  }
  constexpr SymMat2 operator*(double a) const {
    return {a * a11, a * a12, a * a22};
  }
  bool is_positive_definite() const { return a11 > 0.0 && det() > 0.0; }
};

// x' Q x. Nonnegative for positive semidefinite q; zero iff x = 0 for PD q.
inline constexpr double quad_norm_sq(SymMat2 q, Vec2 x) {
  return x.dot(q.apply(x));
}

struct EigSym2 {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  Vec2 vmin;  // unit eigenvector for lambda_min
  Vec2 vmax;  // unit eigenvector for lambda_max
};

// Closed-form symmetric 2x2 eigendecomposition. Eigenvectors are unit
// length and mutually orthogonal; lambda_min <= lambda_max.
EigSym2 eig_sym2(SymMat2 q);

// Symmetric PD square root, Q^(1/2) = V diag(sqrt(lambda)) V'.
SymMat2 sym_sqrt(SymMat2 q);

// Metric matrix with eigenvalue c1 along `dir` and c2 orthogonal to it.
// Its unit ellipsoid is elongated along the generating direction.
struct DirectionalMatrix {
  SymMat2 q;
  double c1 = 1.0;
  double c2 = 2.0;
  Vec2 dir;  // the generating vector; may be zero
};

// Builds the directional matrix c2*I + (c1 - c2) * v v' / |v|^2 for
// nonzero v, and c1*I when |v| is below kZeroDirectionThreshold.
// Requires 0 < c1 < c2 and finite inputs; throws std::invalid_argument
// otherwise.
DirectionalMatrix directional_matrix(Vec2 v, double c1, double c2);

struct Ellipsoid {
  Vec2 center;
  SymMat2 q = SymMat2::identity();  // must be PD
  double level = 0.0;               // must be >= 0
};

// Membership test (p - center)' q (p - center) <= level, with an absolute
// slack of kMembershipTolerance on the form value.
bool ellipsoid_contains(const Ellipsoid& e, Vec2 p);

}  // namespace sddm

#endif  // SDDM_METRIC_H_
