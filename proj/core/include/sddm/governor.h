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

#ifndef SDDM_GOVERNOR_H_
#define SDDM_GOVERNOR_H_

#include <stdexcept>
#include <vector>

#include "sddm/environment.h"
#include "sddm/metric.h"
#include "sddm/trajectory_bounds.h"

namespace sddm {

struct RobotGovernorState {
  Vec2 robot_pos;
  Vec2 robot_vel;
  Vec2 gov_pos;
};

// Piecewise-linear navigation path r : [0,1] -> R^2, arc-length
// parameterized. Requires >= 2 waypoints with distinct consecutive points.
class PathSpec {
 public:
  PathSpec() = default;
  explicit PathSpec(std::vector<Vec2> waypoints);

  Vec2 point_at(double alpha) const;
  Vec2 start() const { return waypoints_.front(); }
  Vec2 goal() const { return waypoints_.back(); }
  double total_length() const { return total_length_; }
  const std::vector<Vec2>& waypoints() const { return waypoints_; }
  const std::vector<double>& cumulative_lengths() const { return cum_len_; }
  bool empty() const { return waypoints_.empty(); }

 private:
  std::vector<Vec2> waypoints_;
  std::vector<double> cum_len_;  // cum_len_[i] = arc length up to waypoint i
  double total_length_ = 0.0;
};

struct ControllerParams {
  double k = 1.0;
  double zeta = 2.0 * M_SQRT2;
  double kg = 1.0;
  double c1 = 1.0;
  double c2 = 4.0;
};

// Zone level is clamped to this value when no obstacle bounds it
// (empty environment sentinel is +infinity).
inline constexpr double kMaxZoneLevel = 1e18;

struct SafetyAssessment {
  SymMat2 q = SymMat2::identity();  // metric used for this assessment
  double eta = 0.0;      // exact output peak (logging/monitoring)
  double delta = 0.0;    // trajectory bound used in the gate
  double dist_sq = 0.0;  // squared metric distance from governor to obstacles
  double delta_e = 0.0;  // dist_sq - delta
  Ellipsoid safe_zone;   // E_q(gov, max(0, delta_e))
};

// Directional assessment: q = Q[g - x], delta from the trajectory bound of
// the tracking-error state in that metric (analytic peak when the gains are
// critically damped, relaxed certificate otherwise), dist_sq the squared
// directional distance from the governor to the environment.
SafetyAssessment assess(const RobotGovernorState& state,
                        const Environment& env, const ControllerParams& p);

// Euclidean-energy baseline: spherical zone with level
// d^2(g, O) - (k |x-g|^2 + 1/2 |xdot|^2).
SafetyAssessment baseline_energy_zone(const RobotGovernorState& state,
                                      const Environment& env,
                                      const ControllerParams& p);

struct LocalGoal {
  double alpha = 0.0;
  Vec2 goal;
};

struct NoFeasibleAlphaError : std::runtime_error {
  NoFeasibleAlphaError() : std::runtime_error("no path point in safe zone") {}
};

// Farthest-alpha point of the path inside the safe zone. When the zone has
// zero level it degenerates to the governor position and the held alpha is
// returned unchanged (the governor waits). Throws NoFeasibleAlphaError if
// the zone has positive level but contains no path point.
LocalGoal local_projected_goal(const PathSpec& path,
                               const SafetyAssessment& assessment,
                               double held_alpha);

// -kg (g - goal)
Vec2 governor_input(const RobotGovernorState& state, Vec2 goal, double kg);

// -2k (x - g) - zeta * xdot
Vec2 robot_input(const RobotGovernorState& state, const ControllerParams& p);

}  // namespace sddm

#endif  // SDDM_GOVERNOR_H_
