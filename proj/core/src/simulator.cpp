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

#include "sddm/simulator.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sddm {
namespace {

constexpr double kGoalPosTol = 0.05;   // m
constexpr double kGoalVelTol = 0.05;   // m/s

struct State6 {
  Vec2 x, v, g;

  State6 operator+(const State6& o) const {
    return {x + o.x, v + o.v, g + o.g};
  }
  State6 operator*(double a) const { return {a * x, a * v, a * g}; }
};

State6 deriv(const State6& s, const ControllerParams& p, Vec2 gov_input) {
  return {s.v, -2.0 * p.k * (s.x - s.g) - p.zeta * s.v, gov_input};
}

SafetyAssessment run_assessment(const RobotGovernorState& state,
                                const Scenario& scenario,
                                const Environment& sensed) {
  SafetyAssessment a =
      scenario.controller == ControllerKind::kSddm
          ? assess(state, sensed, scenario.params)
          : baseline_energy_zone(state, sensed, scenario.params);
  if (scenario.mapping) {
    // With no return in range, the nearest true obstacle is at least
    // max_range away from the sensor; cap the distance conservatively.
    const double c_low = scenario.controller == ControllerKind::kSddm
                             ? scenario.params.c1
                             : 1.0;
    const double cap =
        c_low * scenario.lidar.max_range * scenario.lidar.max_range;
    if (a.dist_sq > cap) {
      a.dist_sq = cap;
      a.delta_e = a.dist_sq - a.delta;
      a.safe_zone.level = std::max(0.0, a.delta_e);
    }
  }
  return a;
}

}  // namespace

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::kGoalReached: return "GoalReached";
    case RunStatus::kTimeout: return "Timeout";
    case RunStatus::kCollision: return "Collision";
    case RunStatus::kNoFeasibleAlpha: return "NoFeasibleAlpha";
  }
  return "Unknown";
}

std::string to_string(ControllerKind c) {
  return c == ControllerKind::kSddm ? "sddm" : "euclid";
}

void validate_scenario(const Scenario& scenario) {
  if (!scenario.validate) return;
  if (!(scenario.dt > 0.0) || scenario.dt > 0.05) {
    throw std::invalid_argument("scenario: dt must be in (0, 0.05]");
  }
  const SafetyAssessment a =
      run_assessment(scenario.initial, scenario, scenario.env);
  if (!(a.delta_e > 0.0)) {
    throw std::invalid_argument(
        "scenario: initial state is unsafe (delta_e <= 0)");
  }
  if (scenario.mapping) {
    if (!free_space_contains(scenario.env, scenario.mapping->goal)) {
      throw std::invalid_argument("scenario: goal is inside an obstacle");
    }
    return;
  }
  if (scenario.path.empty()) {
    throw std::invalid_argument("scenario: path required without mapping");
  }
  // Paths must lie in the interior of free space.
  const double spacing = 0.01;
  const int n =
      std::max(2, static_cast<int>(scenario.path.total_length() / spacing));
  for (int i = 0; i <= n; ++i) {
    const Vec2 p = scenario.path.point_at(static_cast<double>(i) / n);
    if (!free_space_contains(scenario.env, p)) {
      throw std::invalid_argument(
          "scenario: navigation path intersects an obstacle");
    }
  }
}

StepResult step(const RobotGovernorState& state, const Scenario& scenario,
                const Environment& sensed, const PathSpec& path, double t,
                double& held_alpha) {
  const SafetyAssessment a = run_assessment(state, scenario, sensed);
  const LocalGoal lg = local_projected_goal(path, a, held_alpha);
  held_alpha = lg.alpha;
  const Vec2 u_g = governor_input(state, lg.goal, scenario.params.kg);

  StepResult out;
  out.row.t = t;
  out.row.robot_pos = state.robot_pos;
  out.row.robot_vel = state.robot_vel;
  out.row.gov_pos = state.gov_pos;
  out.row.alpha_star = lg.alpha;
  out.row.eta = a.eta;
  out.row.delta = a.delta;
  out.row.delta_e = a.delta_e;
  out.row.dist_q = std::sqrt(a.dist_sq);
  out.row.dist_euclid =
      dist_q_env(SymMat2::identity(), state.robot_pos, scenario.env).dist;

  const double dt = scenario.dt;
  const State6 s0{state.robot_pos, state.robot_vel, state.gov_pos};
  const State6 k1 = deriv(s0, scenario.params, u_g);
  const State6 s1 = s0 + k1 * (0.5 * dt);
  const State6 k2 = deriv(s1, scenario.params, u_g);
  const State6 s2 = s0 + k2 * (0.5 * dt);
  const State6 k3 = deriv(s2, scenario.params, u_g);
  const State6 s3 = s0 + k3 * dt;
  const State6 k4 = deriv(s3, scenario.params, u_g);
  const State6 sf = s0 + (k1 + (k2 + k3) * 2.0 + k4) * (dt / 6.0);

  for (const State6* s : {&s1, &s2, &s3, &sf}) {
    if (!free_space_contains(scenario.env, s->x)) {
      out.collided = true;
      break;
    }
  }
  out.next = {sf.x, sf.v, sf.g};
  return out;
}

namespace {

LidarScan take_scan(const Environment& env, Vec2 origin,
                    const LidarConfig& lidar) {
  LidarScan scan;
  scan.origin = origin;
  scan.max_range = lidar.max_range;
  scan.angles.reserve(lidar.beams);
  scan.ranges.reserve(lidar.beams);
  for (int i = 0; i < lidar.beams; ++i) {
    const double angle = 2.0 * M_PI * i / lidar.beams;
    scan.angles.push_back(angle);
    scan.ranges.push_back(raycast(env, origin, angle, lidar.max_range));
  }
  return scan;
}

PointCloud scan_to_cloud(const LidarScan& scan) {
  PointCloud cloud;
  for (std::size_t i = 0; i < scan.angles.size(); ++i) {
    if (scan.ranges[i] < scan.max_range - 1e-9) {
      cloud.points.push_back(
          scan.origin + scan.ranges[i] * Vec2{std::cos(scan.angles[i]),
                                              std::sin(scan.angles[i])});
    }
  }
  return cloud;
}

bool path_blocked(const PathSpec& path, const OccupancyGrid& inflated) {
  if (path.empty()) return true;
  const auto& wp = path.waypoints();
  for (std::size_t i = 1; i < wp.size(); ++i) {
    if (!line_of_sight(inflated, wp[i - 1], wp[i])) return true;
  }
  return false;
}

std::optional<PathSpec> plan_path(const OccupancyGrid& inflated, Vec2 from,
                                  Vec2 goal) {
  Vec2 plan_start = from;
  auto [ix, iy] = inflated.world_to_cell(from);
  if (!inflated.in_bounds(ix, iy) ||
      inflated.at(ix, iy) != CellState::kFree) {
    // Inflation can swallow the governor cell; plan from the nearest free
    // cell instead and keep the true position as the first waypoint.
    bool found = false;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 1; r <= 10 && !found; ++r) {
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          const int nx = ix + dx, ny = iy + dy;
          if (!inflated.in_bounds(nx, ny) ||
              inflated.at(nx, ny) != CellState::kFree) {
            continue;
          }
          const Vec2 c = inflated.cell_center(nx, ny);
          const double d = (c - from).squared_norm();
          if (d < best) {
            best = d;
            plan_start = c;
            found = true;
          }
        }
      }
    }
    if (!found) return std::nullopt;
  }
  const auto cells = astar(inflated, plan_start, goal);
  if (!cells || cells->size() < 2) return std::nullopt;
  PathSpec simplified = simplify_path(*cells, inflated);
  std::vector<Vec2> wp = simplified.waypoints();
  if ((wp.front() - from).norm() > 1e-9) {
    wp.insert(wp.begin(), from);
  }
  return PathSpec(std::move(wp));
}

}  // namespace

TrajectoryLog run(const Scenario& scenario) {
  validate_scenario(scenario);

  TrajectoryLog log;
  RobotGovernorState state = scenario.initial;
  double held_alpha = 0.0;

  const bool mapping = scenario.mapping.has_value();
  Environment sensed = scenario.env;
  PathSpec path = scenario.path;
  OccupancyGrid grid;
  Vec2 goal = mapping ? scenario.mapping->goal : scenario.path.goal();

  double next_scan_t = 0.0;
  double next_replan_t = 0.0;
  bool need_replan = true;

  if (mapping) {
    const AABB& b = scenario.env.bounds;
    const double res = scenario.mapping->resolution;
    grid = OccupancyGrid(
        b.min, res,
        static_cast<int>(std::ceil((b.max.x - b.min.x) / res)),
        static_cast<int>(std::ceil((b.max.y - b.min.y) / res)));
    sensed = Environment{{}, scenario.env.bounds};
  }

  const int n_steps = static_cast<int>(std::ceil(scenario.t_max / scenario.dt));
  for (int i = 0; i <= n_steps; ++i) {
    const double t = i * scenario.dt;

    if ((state.robot_pos - goal).norm() <= kGoalPosTol &&
        state.robot_vel.norm() <= kGoalVelTol) {
      log.status = RunStatus::kGoalReached;
      log.completion_time = t;
      break;
    }
    if (t > scenario.t_max) {
      log.status = RunStatus::kTimeout;
      log.completion_time = t;
      break;
    }

    if (mapping) {
      if (t >= next_scan_t - 1e-12) {
        const LidarScan scan =
            take_scan(scenario.env, state.robot_pos, scenario.lidar);
        integrate_scan(grid, scan);
        sensed.obstacles.clear();
        sensed.obstacles.emplace_back(scan_to_cloud(scan));
        next_scan_t += scenario.mapping->sensor_period;
        const OccupancyGrid inflated =
            inflate(grid, scenario.mapping->inflate_margin);
        if (t >= next_replan_t - 1e-12 || path_blocked(path, inflated)) {
          need_replan = true;
        }
        if (need_replan) {
          if (auto p = plan_path(inflated, state.gov_pos, goal)) {
            path = std::move(*p);
            held_alpha = 0.0;
            need_replan = false;
          }
          next_replan_t = t + scenario.mapping->replan_period;
        }
      }
      if (path.empty()) {
        log.status = RunStatus::kNoFeasibleAlpha;
        log.completion_time = t;
        break;
      }
    }

    StepResult r;
    try {
      r = step(state, scenario, sensed, path, t, held_alpha);
    } catch (const NoFeasibleAlphaError&) {
      log.status = RunStatus::kNoFeasibleAlpha;
      log.completion_time = t;
      break;
    }
    log.rows.push_back(r.row);
    if (r.collided) {
      log.status = RunStatus::kCollision;
      log.completion_time = t + scenario.dt;
      break;
    }
    state = r.next;
  }
  if (log.rows.size() == static_cast<std::size_t>(n_steps) + 1 &&
      log.status == RunStatus::kTimeout) {
    log.completion_time = scenario.t_max;
  }
  if (mapping) log.grid = std::move(grid);
  return log;
}

std::string log_to_csv(const TrajectoryLog& log) {
  std::string out =
      "t,robot_pos_x,robot_pos_y,robot_vel_x,robot_vel_y,"
      "gov_pos_x,gov_pos_y,alpha_star,eta,delta,delta_e,dist_q,dist_euclid\n";
  char buf[512];
  for (const LogRow& r : log.rows) {
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%.17g,%.17g,%.17g\n",
                  r.t, r.robot_pos.x, r.robot_pos.y, r.robot_vel.x,
                  r.robot_vel.y, r.gov_pos.x, r.gov_pos.y, r.alpha_star,
                  r.eta, r.delta, r.delta_e, r.dist_q, r.dist_euclid);
    out += buf;
  }
  out += "# status," + to_string(log.status) + "\n";
  return out;
}

}  // namespace sddm
