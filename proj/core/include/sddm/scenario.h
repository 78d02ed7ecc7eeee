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

#ifndef SDDM_SCENARIO_H_
#define SDDM_SCENARIO_H_

#include <stdexcept>
#include <string>

#include "sddm/simulator.h"

namespace sddm {

// Parse error with the offending 1-based line number.
struct ScenarioParseError : std::runtime_error {
  ScenarioParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line(line) {}
  int line;
};

// Flat, line-oriented scenario format:
//
//   # comment
//   [workspace]
//   bounds = xmin ymin xmax ymax
//   [params]
//   k = 1.0
//   zeta = 2.8284271247461903
//   kg = 1.0
//   c1 = 1.0
//   c2 = 4.0
//   [sim]
//   dt = 0.005
//   t_max = 120
//   controller = sddm | euclid
//   seed = 0
//   validate = true | false
//   [initial]
//   robot = x y
//   velocity = x y
//   governor = x y
//   [path]
//   waypoint = x y        (repeated, in order)
//   [obstacles]
//   circle = cx cy r
//   segment = ax ay bx by
//   point = x y           (aggregated into one point cloud)
//   [mapping]
//   goal = x y
//   beams = 180
//   max_range = 5.0
//   resolution = 0.1
//   inflate_margin = 0.3
//   replan_period = 0.5
//   sensor_period = 0.1
//
// Lengths in meters, times in seconds, angles in radians. Unknown sections
// or keys are rejected.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

}  // namespace sddm

#endif  // SDDM_SCENARIO_H_
