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
#include <random>

#include "doctest.h"
#include "sddm/environment.h"

using namespace sddm;

namespace {

double norm_q(SymMat2 q, Vec2 d) { return std::sqrt(quad_norm_sq(q, d)); }

double brute_segment(SymMat2 q, Vec2 p, const Segment& s, int n = 100000) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    best = std::min(best, norm_q(q, p - (s.a + t * (s.b - s.a))));
  }
  return best;
}

double brute_circle(SymMat2 q, Vec2 p, const Circle& c, int n = 100000) {
  if ((p - c.center).norm() <= c.radius) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * M_PI * i / n;
    const Vec2 b = c.center + c.radius * Vec2{std::cos(a), std::sin(a)};
    best = std::min(best, norm_q(q, p - b));
  }
  return best;
}

SymMat2 random_metric(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uang(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> uc1(0.3, 2.0);
  std::uniform_real_distribution<double> ur(1.2, 8.0);
  const double a = uang(rng);
  const double c1 = uc1(rng);
  return directional_matrix({std::cos(a), std::sin(a)}, c1, c1 * ur(rng)).q;
}

}  // namespace

TEST_CASE("point distance closed-form values") {
  CHECK(dist_q_point(SymMat2::identity(), {0, 0}, {3, 4}) ==
        doctest::Approx(5.0));
  CHECK(dist_q_point({1, 0, 4}, {0, 0}, {0, 1}) == doctest::Approx(2.0));
}

TEST_CASE("segment distance closed-form values") {
  const Segment s{{-1, 0}, {1, 0}};
  const DistanceResult a = dist_q_segment(SymMat2::identity(), {0, 1}, s);
  CHECK(a.dist == doctest::Approx(1.0));
  CHECK(a.witness.x == doctest::Approx(0.0));
  CHECK(a.witness.y == doctest::Approx(0.0));

  const DistanceResult b = dist_q_segment({1, 0, 4}, {0, 1}, s);
  CHECK(b.dist == doctest::Approx(2.0));

  const DistanceResult c = dist_q_segment(SymMat2::identity(), {2, 0}, s);
  CHECK(c.dist == doctest::Approx(1.0));
  CHECK(c.witness.x == doctest::Approx(1.0));
  CHECK(c.witness.y == doctest::Approx(0.0));
}

TEST_CASE("circle distance closed-form values") {
  const Circle c{{0, 0}, 1.0};
  const DistanceResult a = dist_q_circle(SymMat2::identity(), {3, 0}, c);
  CHECK(a.dist == doctest::Approx(2.0));
  CHECK(a.witness.x == doctest::Approx(1.0));
  CHECK(a.witness.y == doctest::Approx(0.0).epsilon(1e-9));

  // isotropic scaling: q = 4 I scales distances by 2
  const DistanceResult b =
      dist_q_circle(SymMat2::scaled_identity(4.0), {3, 4}, c);
  CHECK(b.dist == doctest::Approx(2.0 * 4.0).epsilon(1e-10));

  const DistanceResult d = dist_q_circle({1, 0, 4}, {0, 3}, c);
  CHECK(d.dist == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(d.witness.x == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(d.witness.y == doctest::Approx(1.0).epsilon(1e-8));

  // inside the disk
  const DistanceResult in = dist_q_circle({1, 0, 4}, {0.2, 0.1}, c);
  CHECK(in.dist == 0.0);
}

TEST_CASE("randomized distances match brute-force oracles") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_real_distribution<double> ur(0.3, 2.0);
  for (int i = 0; i < 40; ++i) {
    const SymMat2 q = random_metric(rng);
    const Vec2 p{u(rng), u(rng)};

    const Segment seg{{u(rng), u(rng)}, {u(rng), u(rng)}};
    const DistanceResult ds = dist_q_segment(q, p, seg);
    CHECK(ds.dist == doctest::Approx(brute_segment(q, p, seg)).epsilon(1e-6));
    CHECK(std::abs(norm_q(q, p - ds.witness) - ds.dist) < 1e-10);

    const Circle c{{u(rng), u(rng)}, ur(rng)};
    const DistanceResult dc = dist_q_circle(q, p, c);
    CHECK(dc.dist == doctest::Approx(brute_circle(q, p, c)).epsilon(1e-6));
    CHECK(std::abs(norm_q(q, p - dc.witness) - dc.dist) < 1e-10);
    if (dc.dist > 0.0) {
      CHECK(std::abs((dc.witness - c.center).norm() - c.radius) < 1e-9);
    }

    // metric monotonicity under q' = q + eps I
    const SymMat2 q2 = q + SymMat2::scaled_identity(0.05);
    CHECK(dist_q_segment(q2, p, seg).dist >= ds.dist - 1e-12);
    CHECK(dist_q_circle(q2, p, c).dist >= dc.dist - 1e-12);
  }
}

TEST_CASE("environment minimum and directional witness flip") {
  Environment env;
  env.obstacles.emplace_back(Circle{{0, 2}, 0.5});
  env.obstacles.emplace_back(Circle{{3, 0}, 0.5});

  // Euclidean metric: the circle above is closer.
  const DistanceResult e = dist_q_env(SymMat2::identity(), {0, 0}, env);
  CHECK(e.dist == doctest::Approx(1.5));
  CHECK(e.witness.y > 1.0);

  // Metric elongated along +x penalizes lateral (y) motion: the circle
  // ahead wins despite being farther in Euclidean terms.
  const SymMat2 q = directional_matrix({1, 0}, 1.0, 4.0).q;
  const DistanceResult d = dist_q_env(q, {0, 0}, env);
  CHECK(d.dist == doctest::Approx(2.5).epsilon(1e-9));
  CHECK(d.witness.x > 2.0);

  const Environment empty;
  CHECK(std::isinf(dist_q_env(SymMat2::identity(), {0, 0}, empty).dist));

  PointCloud cloud;
  cloud.points = {{1, 1}, {5, 5}};
  const DistanceResult dp = dist_q_cloud(SymMat2::identity(), {0, 0}, cloud);
  CHECK(dp.dist == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("raycast closed-form values") {
  Environment env;
  env.obstacles.emplace_back(Circle{{5, 0}, 1.0});
  env.obstacles.emplace_back(Segment{{-1, 2}, {1, 2}});
  CHECK(raycast(env, {0, 0}, 0.0, 10.0) == doctest::Approx(4.0));
  CHECK(raycast(env, {0, 0}, M_PI_2, 10.0) == doctest::Approx(2.0));
  CHECK(raycast(env, {0, 0}, M_PI, 10.0) == doctest::Approx(10.0));
}

TEST_CASE("free space predicate") {
  const Environment empty;
  CHECK(free_space_contains(empty, {100, -3}));

  Environment env;
  env.obstacles.emplace_back(Circle{{0, 0}, 1.0});
  env.obstacles.emplace_back(Segment{{2, -1}, {2, 1}});
  CHECK(!free_space_contains(env, {0.5, 0}));
  CHECK(free_space_contains(env, {1.5, 0}));
  CHECK(!free_space_contains(env, {2.0 + 1e-12, 0}));
  CHECK(free_space_contains(env, {2.1, 0}));
}
