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

#ifndef SDDM_REPORT_H_
#define SDDM_REPORT_H_

#include <string>

#include "sddm/simulator.h"

namespace sddm {

// Deterministic per-run summary derived from a trajectory log.
struct RunReport {
  RunStatus status = RunStatus::kTimeout;
  double completion_time = 0.0;
  double path_length = 0.0;      // meters traveled by the robot
  double mean_speed = 0.0;       // m/s over logged rows
  double max_speed = 0.0;        // m/s
  double min_clearance = 0.0;    // min Euclidean robot-obstacle distance
  double min_delta_e = 0.0;
};

RunReport summarize(const TrajectoryLog& log);

std::string report_to_text(const RunReport& r, const std::string& label);

}  // namespace sddm

#endif  // SDDM_REPORT_H_
