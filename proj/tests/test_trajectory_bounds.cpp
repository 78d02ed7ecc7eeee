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
#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "sddm/trajectory_bounds.h"

using namespace sddm;

namespace {

// Independent dense-grid output-peak oracle via matrix-exponential stepping.
double dense_peak(const ClosedLoopSystem& sys, const StateVec& s0,
                  double dt_scale = 1e-3) {
  const double rate = std::abs(sys.max_real_eig);
  const double dt = dt_scale / rate;
  const int n = static_cast<int>(40.0 / rate / dt);
  const Mat4 step = (sys.a_bar * dt).exp();
  Vec4 s = s0.to_vec4();
  double best = sys.output_sq(s);
  for (int i = 0; i < n; ++i) {
    s = step * s;
    best = std::max(best, sys.output_sq(s));
  }
  return best;
}

StateVec random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  return {{u(rng), u(rng)}, {u(rng), u(rng)}};
}

SymMat2 random_metric(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uang(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> uc1(0.5, 2.0);
  std::uniform_real_distribution<double> ur(1.5, 8.0);
  const double ang = uang(rng);
  const double c1 = uc1(rng);
  return directional_matrix({std::cos(ang), std::sin(ang)}, c1, c1 * ur(rng))
      .q;
}

}  // namespace

TEST_CASE("double integrator closed loop structure") {
  const DoubleIntegratorGains g{1.0, 2.0 * M_SQRT2};
  CHECK(g.is_critically_damped());
  const ClosedLoopSystem sys =
      build_double_integrator(g, SymMat2::identity());
  // repeated eigenvalue -sqrt(2), multiplicity 4
  const Eigen::Vector4cd ev = sys.a_bar.eigenvalues();
  for (int i = 0; i < 4; ++i) {
    CHECK(ev[i].real() == doctest::Approx(-M_SQRT2).epsilon(1e-7));
    CHECK(std::abs(ev[i].imag()) < 1e-7);
  }
  CHECK(sys.max_real_eig == doctest::Approx(-M_SQRT2).epsilon(1e-7));
  // c_out = [I, 0] for q = I
  CHECK(sys.c_out(0, 0) == doctest::Approx(1.0));
  CHECK(sys.c_out(1, 1) == doctest::Approx(1.0));
  CHECK(sys.c_out(0, 2) == 0.0);
  CHECK(sys.c_out(1, 3) == 0.0);

  const ClosedLoopSystem under =
      build_double_integrator({1.0, 1.0}, SymMat2::identity());
  CHECK(under.max_real_eig == doctest::Approx(-0.5).epsilon(1e-9));

  DoubleIntegratorGains rec;
  CHECK(detect_double_integrator(sys.a_bar, &rec));
  CHECK(rec.k == doctest::Approx(1.0));
  CHECK(rec.zeta == doctest::Approx(2.0 * M_SQRT2));
}

TEST_CASE("make_closed_loop rejects unstable systems") {
  Mat4 a = Mat4::Identity();
  Mat2x4 c = Mat2x4::Zero();
  c(0, 0) = c(1, 1) = 1.0;
  CHECK_THROWS_AS(make_closed_loop(a, c), std::invalid_argument);
}

TEST_CASE("critically damped exact peak, closed-form cases") {
  const DoubleIntegratorGains g{1.0, 2.0 * M_SQRT2};
  const double lambda = -g.zeta / 2.0;
  const ClosedLoopSystem sys =
      build_double_integrator(g, SymMat2::identity());

  const PeakResult zero = exact_peak_critically_damped(sys, {{0, 0}, {0, 0}},
                                                       lambda);
  CHECK(zero.eta == 0.0);
  CHECK(zero.argmax_t == 0.0);

  // pure decay from rest: peak at t = 0
  const PeakResult rest =
      exact_peak_critically_damped(sys, {{-2, 0}, {0, 0}}, lambda);
  CHECK(rest.eta == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(rest.argmax_t == 0.0);

  // not critically damped rejected
  const ClosedLoopSystem under =
      build_double_integrator({1.0, 1.0}, SymMat2::identity());
  CHECK_THROWS_AS(
      (exact_peak_critically_damped(under, {{1, 0}, {0, 0}}, -0.5)),
      std::invalid_argument);
}

TEST_CASE("exact peak matches dense oracle on the reference scenario") {
  // initial position error (-2, 0), velocity (0, 2), metric elongated
  // along the direction from robot to governor (+x)
  const DoubleIntegratorGains g{1.0, 2.0 * M_SQRT2};
  const SymMat2 q = directional_matrix({2.0, 0.0}, 1.0, 4.0).q;
  const ClosedLoopSystem sys = build_double_integrator(g, q);
  const StateVec s0{{-2.0, 0.0}, {0.0, 2.0}};
  const PeakResult p = exact_peak_critically_damped(sys, s0, -g.zeta / 2.0);
  const double oracle = dense_peak(sys, s0, 1e-4);
  CHECK(p.eta == doctest::Approx(oracle).epsilon(1e-6));
  CHECK(p.eta >= oracle - 1e-12);

  const double delta = relaxed_peak(sys, s0);
  CHECK(delta >= p.eta - 1e-9);
  CHECK(delta / p.eta <= 5.0);
}

TEST_CASE("general sampled path cross-validates the closed form") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uk(0.25, 4.0);
  for (int i = 0; i < 25; ++i) {
    const double k = uk(rng);
    const DoubleIntegratorGains g{k, std::sqrt(8.0 * k)};
    const ClosedLoopSystem sys = build_double_integrator(g, random_metric(rng));
    const StateVec s0 = random_state(rng);
    const PeakResult exact =
        exact_peak_critically_damped(sys, s0, -g.zeta / 2.0);
    const PeakResult general = exact_peak_general(sys, s0);
    if (exact.eta > 0.0) {
      CHECK(general.eta == doctest::Approx(exact.eta).epsilon(1e-8));
    } else {
      CHECK(general.eta == 0.0);
    }
  }
}

TEST_CASE("general path beats a coarse oracle on non-critically-damped "
          "systems") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> uk(0.25, 4.0);
  std::uniform_real_distribution<double> uz(0.5, 4.0);
  for (int i = 0; i < 15; ++i) {
    const ClosedLoopSystem sys = build_double_integrator(
        {uk(rng), uz(rng)}, random_metric(rng));
    const StateVec s0 = random_state(rng);
    const double oracle = dense_peak(sys, s0);
    const PeakResult p = exact_peak_general(sys, s0);
    CHECK(p.eta >= oracle - 1e-9);
    // golden refinement may land slightly above the sampled maximum
    CHECK(p.eta <= oracle * (1.0 + 1e-4) + 1e-12);
  }
}

TEST_CASE("lyapunov solver closed-form cases") {
  const Mat4 a1 = -Mat4::Identity();
  const Mat4 p1 = lyapunov_solve(a1, 2.0 * Mat4::Identity());
  CHECK((p1 - Mat4::Identity()).norm() < 1e-12);

  Mat4 a2 = Mat4::Zero();
  a2.diagonal() << -1, -2, -3, -4;
  const Mat4 p2 = lyapunov_solve(a2, Mat4::Identity());
  CHECK(p2(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p2(1, 1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(p2(2, 2) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(p2(3, 3) == doctest::Approx(0.125).epsilon(1e-12));

  const ClosedLoopSystem sys = build_double_integrator(
      {1.0, 2.0 * M_SQRT2}, SymMat2::identity());
  const Mat4 p3 = lyapunov_solve(sys.a_bar, Mat4::Identity());
  CHECK((p3 - p3.transpose()).norm() < 1e-12);
  const Mat4 residual =
      sys.a_bar.transpose() * p3 + p3 * sys.a_bar + Mat4::Identity();
  CHECK(residual.cwiseAbs().maxCoeff() <= 1e-9);
  // PD
  Eigen::SelfAdjointEigenSolver<Mat4> es(p3);
  CHECK(es.eigenvalues().minCoeff() > 0.0);

  CHECK_THROWS_AS(LyapunovSolver(Mat4::Identity()), std::invalid_argument);
}

TEST_CASE("relaxed peak: trivial case and ordering sweep") {
  const ClosedLoopSystem sys = build_double_integrator(
      {1.0, 2.0 * M_SQRT2}, SymMat2::identity());
  CHECK(relaxed_peak(sys, {{0, 0}, {0, 0}}) == 0.0);

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uk(0.25, 4.0);
  for (int i = 0; i < 100; ++i) {
    const double k = uk(rng);
    const ClosedLoopSystem s =
        build_double_integrator({k, std::sqrt(8.0 * k)}, random_metric(rng));
    const StateVec s0 = random_state(rng);
    const OutputPeakBound b = bound(s, s0);
    CHECK(b.delta >= b.eta - 1e-9);
    CHECK(b.eta >= dense_peak(s, s0) - 1e-9);
  }
}

TEST_CASE("scale homogeneity of eta and delta") {
  const DoubleIntegratorGains g{1.0, 2.0 * M_SQRT2};
  const SymMat2 q = directional_matrix({1.0, 0.5}, 1.0, 4.0).q;
  const ClosedLoopSystem sys = build_double_integrator(g, q);
  const StateVec s0{{-1.5, 0.7}, {0.3, 1.1}};
  const StateVec s2{2.0 * s0.pos_err, 2.0 * s0.vel};
  const OutputPeakBound b1 = bound(sys, s0);
  const OutputPeakBound b2 = bound(sys, s2);
  CHECK(b2.eta == doctest::Approx(4.0 * b1.eta).epsilon(1e-12));
  CHECK(b2.delta == doctest::Approx(4.0 * b1.delta).epsilon(1e-9));
}

TEST_CASE("containment of the position trajectory under delta") {
  const DoubleIntegratorGains g{1.0, 2.0 * M_SQRT2};
  const SymMat2 q = directional_matrix({2.0, 0.0}, 1.0, 4.0).q;
  const ClosedLoopSystem sys = build_double_integrator(g, q);
  const StateVec s0{{-2.0, 0.0}, {0.0, 2.0}};
  const OutputPeakBound b = bound(sys, s0);
  const double dt = 1e-3 / std::abs(sys.max_real_eig);
  const Mat4 step = (sys.a_bar * dt).exp();
  Vec4 s = s0.to_vec4();
  for (int i = 0; i < 20000; ++i) {
    const Vec2 pos{s[0], s[1]};
    CHECK(quad_norm_sq(q, pos) <= b.delta + 1e-9);
    s = step * s;
  }
}
