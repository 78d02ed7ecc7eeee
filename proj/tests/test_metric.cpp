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

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "sddm/metric.h"

using namespace sddm;

namespace {

double frob_norm(SymMat2 m) {
  return std::sqrt(m.a11 * m.a11 + 2.0 * m.a12 * m.a12 + m.a22 * m.a22);
}

SymMat2 rotate(SymMat2 q, double ang) {
  // R Q R' for R = [[c,-s],[s,c]].
  const double c = std::cos(ang), s = std::sin(ang);
  const double b11 = c * q.a11 - s * q.a12;
  const double b12 = c * q.a12 - s * q.a22;
  const double b21 = s * q.a11 + c * q.a12;
  const double b22 = s * q.a12 + c * q.a22;
  return {b11 * c - b12 * s, b11 * s + b12 * c, b21 * s + b22 * c};
}

}  // namespace

TEST_CASE("directional matrix closed-form values") {
  const double h = M_SQRT1_2;
  const DirectionalMatrix d = directional_matrix({h, h}, 1.0, 4.0);
  CHECK(d.q.a11 == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(d.q.a12 == doctest::Approx(-1.5).epsilon(1e-14));
  CHECK(d.q.a22 == doctest::Approx(2.5).epsilon(1e-14));

  const DirectionalMatrix z = directional_matrix({0.0, 0.0}, 1.0, 4.0);
  CHECK(z.q.a11 == 1.0);
  CHECK(z.q.a12 == 0.0);
  CHECK(z.q.a22 == 1.0);

  const DirectionalMatrix a = directional_matrix({3.0, 0.0}, 1.0, 4.0);
  CHECK(a.q.a11 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.q.a12 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(a.q.a22 == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("directional matrix rejects bad parameters") {
  CHECK_THROWS_AS((directional_matrix({1, 0}, 0.0, 4.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS((directional_matrix({1, 0}, -1.0, 4.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS((directional_matrix({1, 0}, 2.0, 2.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS((directional_matrix({1, 0}, 2.0, 1.0)),
                  std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS((directional_matrix({inf, 0}, 1.0, 4.0)),
                  std::invalid_argument);
}

TEST_CASE("quad_norm_sq closed-form values") {
  CHECK(quad_norm_sq(SymMat2::identity(), {3, 4}) == 25.0);
  CHECK(quad_norm_sq({2.5, -1.5, 2.5}, {1, 1}) == doctest::Approx(2.0));
  CHECK(quad_norm_sq({1, 0, 4}, {0, 2}) == 16.0);
}

TEST_CASE("ellipsoid membership") {
  const Ellipsoid unit{{0, 0}, SymMat2::identity(), 1.0};
  CHECK(ellipsoid_contains(unit, {1.0, 0.0}));
  CHECK(!ellipsoid_contains(unit, {1.1, 0.0}));
  const Ellipsoid e{{1, 1}, {1, 0, 4}, 4.0};
  CHECK(ellipsoid_contains(e, {3, 1}));  // form value exactly at the level
}

TEST_CASE("eig_sym2 closed-form cases") {
  const EigSym2 i = eig_sym2(SymMat2::identity());
  CHECK(i.lambda_min == doctest::Approx(1.0));
  CHECK(i.lambda_max == doctest::Approx(1.0));

  const EigSym2 e = eig_sym2({2.5, -1.5, 2.5});
  CHECK(e.lambda_min == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.lambda_max == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(std::abs(e.vmin.x * 1.0 - e.vmin.y * 1.0) < 1e-12);   // vmin || (1,1)
  CHECK(std::abs(e.vmax.x * (-1.0) - e.vmax.y * 1.0) < 1e-12);  // vmax || (1,-1)

  const EigSym2 d = eig_sym2({1, 0, 4});
  CHECK(d.lambda_min == 1.0);
  CHECK(std::abs(std::abs(d.vmin.x) - 1.0) < 1e-15);
  CHECK(std::abs(d.vmin.y) < 1e-15);
}

TEST_CASE("eig_sym2 reconstruction on random matrices") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    SymMat2 q{u(rng), u(rng), u(rng)};
    const EigSym2 e = eig_sym2(q);
    CHECK(e.lambda_min <= e.lambda_max);
    CHECK(std::abs(e.vmin.norm() - 1.0) < 1e-12);
    CHECK(std::abs(e.vmax.norm() - 1.0) < 1e-12);
    CHECK(std::abs(e.vmin.dot(e.vmax)) < 1e-12);
    // Q == lmin vmin vmin' + lmax vmax vmax'
    SymMat2 rec{e.lambda_min * e.vmin.x * e.vmin.x +
                    e.lambda_max * e.vmax.x * e.vmax.x,
                e.lambda_min * e.vmin.x * e.vmin.y +
                    e.lambda_max * e.vmax.x * e.vmax.y,
                e.lambda_min * e.vmin.y * e.vmin.y +
                    e.lambda_max * e.vmax.y * e.vmax.y};
    const SymMat2 diff = rec + q * -1.0;
    CHECK(frob_norm(diff) <= 1e-12 * std::max(1.0, frob_norm(q)));
  }
}

TEST_CASE("sym_sqrt squares back") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> up(0.1, 4.0);
  for (int i = 0; i < 100; ++i) {
    // random PD matrix via R diag R'
    SymMat2 q = rotate({up(rng), 0.0, up(rng)}, u(rng));
    const SymMat2 r = sym_sqrt(q);
    SymMat2 sq{r.a11 * r.a11 + r.a12 * r.a12,
               r.a11 * r.a12 + r.a12 * r.a22,
               r.a12 * r.a12 + r.a22 * r.a22};
    const SymMat2 diff = sq + q * -1.0;
    CHECK(frob_norm(diff) <= 1e-12 * frob_norm(q));
  }
}

TEST_CASE("directional matrix eigenstructure and c1 lower bound") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uv(-2.0, 2.0);
  std::uniform_real_distribution<double> uc1(0.1, 2.0);
  std::uniform_real_distribution<double> ur(1.1, 10.0);
  for (int i = 0; i < 1000; ++i) {
    Vec2 v{uv(rng), uv(rng)};
    if (v.norm() < 1e-6) v = {1.0, 0.0};
    const double c1 = uc1(rng);
    const double c2 = c1 * ur(rng);
    const DirectionalMatrix d = directional_matrix(v, c1, c2);
    CHECK(d.q.is_positive_definite());
    const EigSym2 e = eig_sym2(d.q);
    CHECK(std::abs(e.lambda_min - c1) <= 1e-10);
    CHECK(std::abs(e.lambda_max - c2) <= 1e-10);
    // c1-eigenvector parallel to v
    const Vec2 vn = (1.0 / v.norm()) * v;
    CHECK(std::abs(std::abs(vn.dot(e.vmin)) - 1.0) < 1e-10);
    for (int j = 0; j < 20; ++j) {
      const Vec2 p{uv(rng), uv(rng)};
      CHECK(quad_norm_sq(d.q, p) >=
            c1 * p.squared_norm() * (1.0 - 1e-12) - 1e-15);
    }
  }
}

TEST_CASE("rotation equivariance and scale invariance") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> uang(0.0, 2.0 * M_PI);
  for (int i = 0; i < 200; ++i) {
    Vec2 v{u(rng), u(rng)};
    if (v.norm() < 1e-6) continue;
    const double ang = uang(rng);
    const double c = std::cos(ang), s = std::sin(ang);
    const Vec2 rv{c * v.x - s * v.y, s * v.x + c * v.y};
    const SymMat2 lhs = directional_matrix(rv, 1.0, 4.0).q;
    const SymMat2 rhs = rotate(directional_matrix(v, 1.0, 4.0).q, ang);
    const SymMat2 diff = lhs + rhs * -1.0;
    CHECK(frob_norm(diff) <= 1e-12 * frob_norm(rhs));

    // powers of two scale exactly
    const SymMat2 base = directional_matrix(v, 1.0, 4.0).q;
    for (double a : {2.0, 0.5}) {
      const SymMat2 scaled = directional_matrix(a * v, 1.0, 4.0).q;
      CHECK(scaled.a11 == base.a11);
      CHECK(scaled.a12 == base.a12);
      CHECK(scaled.a22 == base.a22);
    }

    // metric value along and across the generating direction
    CHECK(quad_norm_sq(base, v) / v.squared_norm() ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(quad_norm_sq(base, v.perp()) / v.squared_norm() ==
          doctest::Approx(4.0).epsilon(1e-12));
  }
}
