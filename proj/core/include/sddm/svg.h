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

#ifndef SDDM_SVG_H_
#define SDDM_SVG_H_

#include <string>
#include <vector>

#include "sddm/simulator.h"

namespace sddm {

struct PlotSeries {
  const TrajectoryLog* log = nullptr;
  ControllerKind controller = ControllerKind::kSddm;
  ControllerParams params;
  std::string color = "#2a7";
};

// Obstacles, navigation path, robot trajectories, decimated safe-zone
// ellipses and velocity arrows rendered as a standalone SVG document.
std::string render_svg(const Environment& env, const PathSpec& path,
                       const std::vector<PlotSeries>& series);

}  // namespace sddm

#endif  // SDDM_SVG_H_
