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

#include "sddm/governor.h"

#include <algorithm>
#include <cmath>

namespace sddm {

PathSpec::PathSpec(std::vector<Vec2> waypoints)
    : waypoints_(std::move(waypoints)) {
  if (waypoints_.size() < 2) {
    throw std::invalid_argument("PathSpec: need at least two waypoints");
  }
  cum_len_.resize(waypoints_.size());
  cum_len_[0] = 0.0;
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    const double len = (waypoints_[i] - waypoints_[i - 1]).norm();
    if (len <= 0.0) {
      throw std::invalid_argument("PathSpec: consecutive waypoints coincide");
    }
    cum_len_[i] = cum_len_[i - 1] + len;
  }
  total_length_ = cum_len_.back();
}

Vec2 PathSpec::point_at(double alpha) const {
  alpha = std::clamp(alpha, 0.0, 1.0);
  const double s = alpha * total_length_;
  const auto it = std::lower_bound(cum_len_.begin(), cum_len_.end(), s);
  std::size_t i = static_cast<std::size_t>(it - cum_len_.begin());
  if (i == 0) return waypoints_.front();
  if (i >= waypoints_.size()) return waypoints_.back();
  const double seg_len = cum_len_[i] - cum_len_[i - 1];
  const double t = (s - cum_len_[i - 1]) / seg_len;
  return waypoints_[i - 1] + t * (waypoints_[i] - waypoints_[i - 1]);
}

namespace {

SafetyAssessment finish_assessment(SafetyAssessment a, Vec2 gov_pos) {
  // Empty environments report infinite distance; clamp so downstream
  // arithmetic stays finite.
  a.dist_sq = std::min(a.dist_sq, kMaxZoneLevel);
  a.delta_e = a.dist_sq - a.delta;
  a.safe_zone.center = gov_pos;
  a.safe_zone.q = a.q;
  a.safe_zone.level = std::min(std::max(0.0, a.delta_e), kMaxZoneLevel);
  return a;
}

}  // namespace

SafetyAssessment assess(const RobotGovernorState& state,
                        const Environment& env, const ControllerParams& p) {
  SafetyAssessment a;
  a.q = directional_matrix(state.gov_pos - state.robot_pos, p.c1, p.c2).q;
  const StateVec s0{state.robot_pos - state.gov_pos, state.robot_vel};
  const DoubleIntegratorGains gains{p.k, p.zeta};
  const ClosedLoopSystem sys = build_double_integrator(gains, a.q);
  if (gains.is_critically_damped()) {
    // Analytic peak; used directly as the trajectory bound.
    const PeakResult peak =
        exact_peak_critically_damped(sys, s0, -0.5 * gains.zeta);
    a.eta = peak.eta;
    a.delta = peak.eta;
  } else {
    const OutputPeakBound b = bound(sys, s0);
    a.eta = b.eta;
    a.delta = b.delta;
  }
  const double d = dist_q_env(a.q, state.gov_pos, env).dist;
  a.dist_sq = d * d;
  return finish_assessment(a, state.gov_pos);
}

SafetyAssessment baseline_energy_zone(const RobotGovernorState& state,
                                      const Environment& env,
                                      const ControllerParams& p) {
  SafetyAssessment a;
  a.q = SymMat2::identity();
  const double energy = p.k * (state.robot_pos - state.gov_pos).squared_norm() +
                        0.5 * state.robot_vel.squared_norm();
  a.eta = energy;
  a.delta = energy;
  const double d = dist_q_env(a.q, state.gov_pos, env).dist;
  a.dist_sq = d * d;
  return finish_assessment(a, state.gov_pos);
}

LocalGoal local_projected_goal(const PathSpec& path,
                               const SafetyAssessment& assessment,
                               double held_alpha) {
  const Ellipsoid& zone = assessment.safe_zone;
  if (zone.level <= 0.0) {
    // The zone is the single point {g}; the governor waits.
    return {held_alpha, zone.center};
  }
  const auto& wp = path.waypoints();
  const auto& cum = path.cumulative_lengths();
  // Scan from the last segment toward the first; the first feasible
  // segment carries the maximal alpha.
  for (std::size_t i = wp.size() - 1; i >= 1; --i) {
    const Vec2 d = wp[i] - wp[i - 1];
    const Vec2 w = wp[i - 1] - zone.center;
    const double qa = quad_norm_sq(zone.q, d);
    const double qb = 2.0 * w.dot(zone.q.apply(d));
    const double qc =
        quad_norm_sq(zone.q, w) - zone.level - kMembershipTolerance;
    double t_lo, t_hi;
    if (qa <= 0.0) {
      if (qc > 0.0) continue;
      t_lo = 0.0;
      t_hi = 1.0;
    } else {
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc < 0.0) continue;
      const double sq = std::sqrt(disc);
      t_lo = (-qb - sq) / (2.0 * qa);
      t_hi = (-qb + sq) / (2.0 * qa);
    }
    if (t_lo > 1.0 || t_hi < 0.0) continue;
    const double t = std::min(t_hi, 1.0);
    const double seg_len = cum[i] - cum[i - 1];
    LocalGoal out;
    out.alpha = (cum[i - 1] + t * seg_len) / path.total_length();
    out.goal = wp[i - 1] + t * d;
    return out;
  }
  throw NoFeasibleAlphaError();
}

Vec2 governor_input(const RobotGovernorState& state, Vec2 goal, double kg) {
  return -kg * (state.gov_pos - goal);
}

Vec2 robot_input(const RobotGovernorState& state, const ControllerParams& p) {
  return -2.0 * p.k * (state.robot_pos - state.gov_pos) -
         p.zeta * state.robot_vel;
}

}  // namespace sddm
