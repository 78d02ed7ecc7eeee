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

#ifndef SDDM_SIMULATOR_H_
#define SDDM_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sddm/environment.h"
#include "sddm/governor.h"
#include "sddm/planner.h"

namespace sddm {

enum class ControllerKind { kSddm, kEuclideanEnergy };

enum class RunStatus {
  kGoalReached,
  kTimeout,
  kCollision,
  kNoFeasibleAlpha,
};

std::string to_string(RunStatus s);
std::string to_string(ControllerKind c);

struct LidarConfig {
  int beams = 180;
  double max_range = 5.0;
};

struct MappingConfig {
  Vec2 goal;
  double resolution = 0.1;
  double inflate_margin = 0.3;
  double replan_period = 0.5;
  double sensor_period = 0.1;
};

struct Scenario {
  Environment env;
  PathSpec path;  // empty in mapping mode
  RobotGovernorState initial;
  ControllerParams params;
  double dt = 0.005;
  double t_max = 120.0;
  ControllerKind controller = ControllerKind::kSddm;
  LidarConfig lidar;
  std::optional<MappingConfig> mapping;
  std::uint64_t seed = 0;
  bool validate = true;  // initial-safety and path-containment checks
};

// Initial-state safety (delta_e > 0) and path interior containment.
// Throws std::invalid_argument on violation unless scenario.validate is
// false.
void validate_scenario(const Scenario& scenario);

struct LogRow {
  double t = 0.0;
  Vec2 robot_pos;
  Vec2 robot_vel;
  Vec2 gov_pos;
  double alpha_star = 0.0;
  double eta = 0.0;
  double delta = 0.0;
  double delta_e = 0.0;
  double dist_q = 0.0;
  double dist_euclid = 0.0;
};

struct TrajectoryLog {
  std::vector<LogRow> rows;
  RunStatus status = RunStatus::kTimeout;
  double completion_time = 0.0;
  // Final grid state in mapping mode (for export/inspection).
  std::optional<OccupancyGrid> grid;
};

// One control step: assessment, projected goal, governor input, then an
// RK4 step of the 6-state closed loop with the governor input and
// projected goal held over the step. Returns false when the robot leaves
// free space during the step.
struct StepResult {
  RobotGovernorState next;
  LogRow row;
  bool collided = false;
};
StepResult step(const RobotGovernorState& state, const Scenario& scenario,
                const Environment& sensed, const PathSpec& path, double t,
                double& held_alpha);

TrajectoryLog run(const Scenario& scenario);

// CSV export with a fixed header; fields printed with maximum precision so
// identical runs produce byte-identical files.
std::string log_to_csv(const TrajectoryLog& log);

}  // namespace sddm

#endif  // SDDM_SIMULATOR_H_
