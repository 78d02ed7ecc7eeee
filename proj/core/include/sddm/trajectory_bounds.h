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

#ifndef SDDM_TRAJECTORY_BOUNDS_H_
#define SDDM_TRAJECTORY_BOUNDS_H_

#include <Eigen/Dense>

#include "sddm/metric.h"

namespace sddm {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;
using Mat2x4 = Eigen::Matrix<double, 2, 4>;

// State of the tracking-error subsystem: position error x - g and velocity.
struct StateVec {
  Vec2 pos_err;
  Vec2 vel;

  Vec4 to_vec4() const { return Vec4{pos_err.x, pos_err.y, vel.x, vel.y}; }
};

// PD gains for the acceleration-controlled robot
// xddot = -2k (x - g) - zeta * xdot. Critically damped iff zeta^2 = 8k.
struct DoubleIntegratorGains {
  double k = 1.0;
  double zeta = 2.0 * M_SQRT2;

  bool is_critically_damped(double tol = 1e-9) const {
    return std::abs(zeta * zeta - 8.0 * k) <= tol;
  }
};

// Closed loop sdot = A_bar s, z = C s with s = (pos_err, vel) and
// C = Q^(1/2) [I, 0], so |z|^2 is the metric form value of the position
// error. A_bar must be Hurwitz (validated at construction).
struct ClosedLoopSystem {
  Mat4 a_bar;
  Mat2x4 c_out;
  double max_real_eig;  // max over eigenvalues of Re(lambda), < 0

  Vec2 output(const Vec4& s) const {
    Eigen::Vector2d z = c_out * s;
    return {z[0], z[1]};
  }
  double output_sq(const Vec4& s) const { return (c_out * s).squaredNorm(); }
};

ClosedLoopSystem make_closed_loop(const Mat4& a_bar, const Mat2x4& c_out);

// A_bar = [[0, I], [-2k I, -zeta I]], C = [Q^(1/2), 0].
ClosedLoopSystem build_double_integrator(DoubleIntegratorGains gains,
                                         SymMat2 q);

struct PeakResult {
  double eta = 0.0;       // max over t >= 0 of |z(t)|^2
  double argmax_t = 0.0;  // a time attaining the max
};

// Exact output peak for the per-axis critically damped closed loop with
// repeated eigenvalue lambda = -zeta/2. Position error is (a + b t) e^(l t)
// with a = pos_err, b = vel - l a, so |z|^2 = e^(2lt)(p0 + p1 t + p2 t^2)
// and the critical times are roots of a scalar quadratic.
// Throws std::invalid_argument if the system is not critically damped.
PeakResult exact_peak_critically_damped(const ClosedLoopSystem& sys,
                                        const StateVec& s0, double lambda);

// Output peak for any Hurwitz system: dense matrix-exponential sampling on
// [0, T] with T = 40 / |max_real_eig|, followed by golden-section
// refinement of each local maximum.
PeakResult exact_peak_general(const ClosedLoopSystem& sys,
                              const StateVec& s0);

// Solves A_bar' P + P A_bar = -S for symmetric P. Caches the factorization
// of the Kronecker-linearized system so repeated right-hand sides are cheap.
// Throws std::invalid_argument if a_bar is not Hurwitz.
class LyapunovSolver {
 public:
  explicit LyapunovSolver(const Mat4& a_bar);
  Mat4 solve(const Mat4& s_rhs) const;

 private:
  Eigen::PartialPivLU<Eigen::Matrix<double, 16, 16>> lu_;
};

Mat4 lyapunov_solve(const Mat4& a_bar, const Mat4& s_rhs);

// Certified upper bound delta >= eta obtained by minimizing
// lambda_max(C U^-1 C') over a feasible family of invariant-ellipsoid
// matrices U built from Lyapunov solutions. Always a valid bound; the
// family search only affects tightness.
double relaxed_peak(const ClosedLoopSystem& sys, const StateVec& s0);

struct OutputPeakBound {
  double eta = 0.0;
  double delta = 0.0;  // >= eta
  double argmax_t = 0.0;
};

// Exact peak (closed form when critically damped, sampled otherwise)
// paired with the relaxed certificate.
OutputPeakBound bound(const ClosedLoopSystem& sys, const StateVec& s0);

// Detects the double-integrator block structure of a_bar and recovers
// (k, zeta) when present. Used to route bound() to the closed-form path.
bool detect_double_integrator(const Mat4& a_bar, DoubleIntegratorGains* out,
                              double tol = 1e-9);

}  // namespace sddm

#endif  // SDDM_TRAJECTORY_BOUNDS_H_
