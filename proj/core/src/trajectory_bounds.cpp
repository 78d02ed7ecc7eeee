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

#include "sddm/trajectory_bounds.h"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sddm {
namespace {

constexpr double kGolden = 0.6180339887498949;  // 1/phi

double max_real_eigenvalue(const Mat4& m) {
  Eigen::EigenSolver<Mat4> es(m, /*computeEigenvectors=*/false);
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    worst = std::max(worst, es.eigenvalues()[i].real());
  }
  return worst;
}

// Golden-section minimization of f on [lo, hi] to tolerance tol in the
// argument. Returns the best argument found.
template <typename F>
double golden_min(F&& f, double lo, double hi, double tol) {
  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

SymMat2 q_from_output(const Mat2x4& c_out) {
  // C = [Q^(1/2), 0], so Q = C_pos' C_pos.
  Eigen::Matrix2d h = c_out.block<2, 2>(0, 0);
  Eigen::Matrix2d q = h.transpose() * h;
  return {q(0, 0), 0.5 * (q(0, 1) + q(1, 0)), q(1, 1)};
}

}  // namespace

ClosedLoopSystem make_closed_loop(const Mat4& a_bar, const Mat2x4& c_out) {
  ClosedLoopSystem sys;
  sys.a_bar = a_bar;
  sys.c_out = c_out;
  sys.max_real_eig = max_real_eigenvalue(a_bar);
  if (!(sys.max_real_eig < 0.0)) {
    throw std::invalid_argument("make_closed_loop: matrix is not Hurwitz");
  }
  return sys;
}

ClosedLoopSystem build_double_integrator(DoubleIntegratorGains gains,
                                         SymMat2 q) {
  if (!(gains.k > 0.0) || !(gains.zeta > 0.0)) {
    throw std::invalid_argument("build_double_integrator: gains must be > 0");
  }
  if (!q.is_positive_definite()) {
    throw std::invalid_argument("build_double_integrator: q must be PD");
  }
  Mat4 a = Mat4::Zero();
  a(0, 2) = 1.0;
  a(1, 3) = 1.0;
  a(2, 0) = -2.0 * gains.k;
  a(3, 1) = -2.0 * gains.k;
  a(2, 2) = -gains.zeta;
  a(3, 3) = -gains.zeta;
  const SymMat2 h = sym_sqrt(q);
  Mat2x4 c = Mat2x4::Zero();
  c(0, 0) = h.a11;
  c(0, 1) = h.a12;
  c(1, 0) = h.a12;
  c(1, 1) = h.a22;
  return make_closed_loop(a, c);
}

bool detect_double_integrator(const Mat4& a_bar, DoubleIntegratorGains* out,
                              double tol) {
  const double k = -0.5 * a_bar(2, 0);
  const double zeta = -a_bar(2, 2);
  if (!(k > 0.0) || !(zeta > 0.0)) return false;
  Mat4 expect = Mat4::Zero();
  expect(0, 2) = 1.0;
  expect(1, 3) = 1.0;
  expect(2, 0) = -2.0 * k;
  expect(3, 1) = -2.0 * k;
  expect(2, 2) = -zeta;
  expect(3, 3) = -zeta;
  if ((a_bar - expect).cwiseAbs().maxCoeff() > tol) return false;
  if (out != nullptr) {
    out->k = k;
    out->zeta = zeta;
  }
  return true;
}

PeakResult exact_peak_critically_damped(const ClosedLoopSystem& sys,
                                        const StateVec& s0, double lambda) {
  DoubleIntegratorGains gains;
  if (!detect_double_integrator(sys.a_bar, &gains) ||
      !gains.is_critically_damped() ||
      std::abs(lambda + 0.5 * gains.zeta) > 1e-9) {
    throw std::invalid_argument(
        "exact_peak_critically_damped: system is not critically damped with "
        "the given eigenvalue");
  }
  const SymMat2 q = q_from_output(sys.c_out);
  const Vec2 a = s0.pos_err;
  const Vec2 b = s0.vel - lambda * s0.pos_err;
  const double p0 = quad_norm_sq(q, a);
  const double p1 = 2.0 * a.dot(q.apply(b));
  const double p2 = quad_norm_sq(q, b);

  const auto value = [&](double t) {
    return std::exp(2.0 * lambda * t) * (p0 + t * (p1 + t * p2));
  };

  // d/dt [e^(2lt)(p0 + p1 t + p2 t^2)] = 0 reduces to this quadratic.
  const double qa = 2.0 * lambda * p2;
  const double qb = 2.0 * lambda * p1 + 2.0 * p2;
  const double qc = 2.0 * lambda * p0 + p1;

  std::array<double, 3> candidates{0.0, -1.0, -1.0};
  if (std::abs(qa) > 1e-300) {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      // Numerically stable pair of roots.
      const double u = -0.5 * (qb + (qb >= 0.0 ? sq : -sq));
      candidates[1] = u / qa;
      if (std::abs(u) > 1e-300) candidates[2] = qc / u;
    }
  } else if (std::abs(qb) > 1e-300) {
    candidates[1] = -qc / qb;
  }

  PeakResult out;
  out.eta = value(0.0);
  out.argmax_t = 0.0;
  for (double t : candidates) {
    if (t > 0.0 && std::isfinite(t)) {
      const double f = value(t);
      if (f > out.eta) {
        out.eta = f;
        out.argmax_t = t;
      }
    }
  }
  return out;
}

PeakResult exact_peak_general(const ClosedLoopSystem& sys,
                              const StateVec& s0) {
  const Vec4 x0 = s0.to_vec4();
  PeakResult out;
  out.eta = sys.output_sq(x0);
  out.argmax_t = 0.0;
  if (x0.squaredNorm() == 0.0) return out;

  // e^(-40) decay leaves no peak beyond this horizon.
  const double horizon = 40.0 / std::abs(sys.max_real_eig);
  const int n = 20000;
  const double dt = horizon / n;
  const Mat4 step = (sys.a_bar * dt).exp();

  std::vector<double> values(n + 1);
  std::vector<Vec4> states(n + 1);
  states[0] = x0;
  values[0] = out.eta;
  for (int i = 1; i <= n; ++i) {
    states[i] = step * states[i - 1];
    values[i] = sys.output_sq(states[i]);
    if (values[i] > out.eta) {
      out.eta = values[i];
      out.argmax_t = i * dt;
    }
  }

  const auto value_at = [&](double t) {
    // Evaluate from the nearest precomputed state to keep the matrix
    // exponential argument small.
    const int i = std::clamp(static_cast<int>(t / dt), 0, n);
    const Mat4 local = (sys.a_bar * (t - i * dt)).exp();
    return sys.output_sq((local * states[i]).eval());
  };

  for (int i = 1; i < n; ++i) {
    if (values[i] >= values[i - 1] && values[i] >= values[i + 1]) {
      const double t = golden_min(
          [&](double u) { return -value_at(u); }, (i - 1) * dt, (i + 1) * dt,
          1e-10);
      const double f = value_at(t);
      if (f > out.eta) {
        out.eta = f;
        out.argmax_t = t;
      }
    }
  }
  return out;
}

LyapunovSolver::LyapunovSolver(const Mat4& a_bar) {
  if (!(max_real_eigenvalue(a_bar) < 0.0)) {
    throw std::invalid_argument("LyapunovSolver: matrix is not Hurwitz");
  }
  // vec(A' P + P A) = (I (x) A' + A' (x) I) vec(P), column-major vec.
  Eigen::Matrix<double, 16, 16> kron =
      Eigen::Matrix<double, 16, 16>::Zero();
  const Mat4 at = a_bar.transpose();
  for (int col = 0; col < 4; ++col) {
    for (int row = 0; row < 4; ++row) {
      for (int k = 0; k < 4; ++k) {
        kron(col * 4 + row, col * 4 + k) += at(row, k);   // I (x) A'
        kron(col * 4 + row, k * 4 + row) += at(col, k);   // A' (x) I
      }
    }
  }
  lu_.compute(kron);
}

Mat4 LyapunovSolver::solve(const Mat4& s_rhs) const {
  Eigen::Matrix<double, 16, 1> rhs;
  for (int col = 0; col < 4; ++col) {
    for (int row = 0; row < 4; ++row) {
      rhs[col * 4 + row] = -s_rhs(row, col);
    }
  }
  const Eigen::Matrix<double, 16, 1> sol = lu_.solve(rhs);
  Mat4 p;
  for (int col = 0; col < 4; ++col) {
    for (int row = 0; row < 4; ++row) {
      p(row, col) = sol[col * 4 + row];
    }
  }
  return 0.5 * (p + p.transpose());
}

Mat4 lyapunov_solve(const Mat4& a_bar, const Mat4& s_rhs) {
  return LyapunovSolver(a_bar).solve(s_rhs);
}

namespace {

// Feasible-family member: S(theta) is PD by construction, so
// U = P / (s0' P s0) satisfies both LMI constraints and
// (s0' P s0) * lambda_max(C P^-1 C') is a certified bound.
struct FamilyEvaluator {
  const ClosedLoopSystem& sys;
  Vec4 s0;
  LyapunovSolver solver;

  FamilyEvaluator(const ClosedLoopSystem& s, const Vec4& x0)
      : sys(s), s0(x0), solver(s.a_bar) {}

  double operator()(double log_pos, double log_vel, double phi) const {
    const double c = std::cos(phi), s = std::sin(phi);
    Mat4 g = Mat4::Zero();
    g(0, 0) = g(1, 1) = c;
    g(2, 2) = g(3, 3) = c;
    g(0, 2) = g(1, 3) = -s;
    g(2, 0) = g(3, 1) = s;
    Mat4 d = Mat4::Zero();
    const double wp = std::exp(2.0 * log_pos);
    const double wv = std::exp(2.0 * log_vel);
    d(0, 0) = d(1, 1) = wp;
    d(2, 2) = d(3, 3) = wv;
    const Mat4 rhs =
        g * d * g.transpose() + 1e-9 * std::max(wp, wv) * Mat4::Identity();
    const Mat4 p = solver.solve(rhs);
    const double scale = s0.dot(p * s0);
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      return std::numeric_limits<double>::infinity();
    }
    const Eigen::Matrix<double, 4, 2> x =
        p.ldlt().solve(sys.c_out.transpose());
    const Eigen::Matrix2d m = sys.c_out * x;
    const SymMat2 m2{m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), m(1, 1)};
    const double lmax = eig_sym2(m2).lambda_max;
    if (!(lmax >= 0.0) || !std::isfinite(lmax)) {
      return std::numeric_limits<double>::infinity();
    }
    return scale * lmax;
  }
};

}  // namespace

double relaxed_peak(const ClosedLoopSystem& sys, const StateVec& s0) {
  const Vec4 x0 = s0.to_vec4();
  if (x0.squaredNorm() == 0.0) return 0.0;
  FamilyEvaluator eval(sys, x0);

  // Deterministic coarse start, then coordinate descent with
  // golden-section line searches.
  std::array<double, 3> theta{0.0, 0.0, 0.0};
  double best = eval(theta[0], theta[1], theta[2]);
  for (double a : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    for (double b : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      for (double phi : {-0.6, -0.3, 0.0, 0.3, 0.6}) {
        const double v = eval(a, b, phi);
        if (v < best) {
          best = v;
          theta = {a, b, phi};
        }
      }
    }
  }

  constexpr int kMaxSweeps = 50;
  constexpr double kParamTol = 1e-6;
  const std::array<double, 3> span{2.0, 2.0, 0.8};
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double max_move = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double old = theta[i];
      auto line = [&](double v) {
        std::array<double, 3> t = theta;
        t[i] = v;
        return eval(t[0], t[1], t[2]);
      };
      const double arg =
          golden_min(line, old - span[i], old + span[i], kParamTol);
      const double v = line(arg);
      if (v < best) {
        best = v;
        theta[i] = arg;
        max_move = std::max(max_move, std::abs(arg - old));
      }
    }
    if (max_move < kParamTol) break;
  }
  return best;
}

OutputPeakBound bound(const ClosedLoopSystem& sys, const StateVec& s0) {
  OutputPeakBound out;
  if (s0.to_vec4().squaredNorm() == 0.0) return out;
  DoubleIntegratorGains gains;
  PeakResult exact;
  if (detect_double_integrator(sys.a_bar, &gains) &&
      gains.is_critically_damped()) {
    exact = exact_peak_critically_damped(sys, s0, -0.5 * gains.zeta);
  } else {
    exact = exact_peak_general(sys, s0);
  }
  out.eta = exact.eta;
  out.argmax_t = exact.argmax_t;
  out.delta = std::max(relaxed_peak(sys, s0), exact.eta);
  return out;
}

}  // namespace sddm
