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

#include "sddm/report.h"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace sddm {

RunReport summarize(const TrajectoryLog& log) {
  RunReport r;
  r.status = log.status;
  r.completion_time = log.completion_time;
  if (log.rows.empty()) return r;
  double speed_sum = 0.0;
  double min_clear = std::numeric_limits<double>::infinity();
  double min_de = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < log.rows.size(); ++i) {
    const LogRow& row = log.rows[i];
    const double speed = row.robot_vel.norm();
    speed_sum += speed;
    r.max_speed = std::max(r.max_speed, speed);
    min_clear = std::min(min_clear, row.dist_euclid);
    min_de = std::min(min_de, row.delta_e);
    if (i > 0) {
      r.path_length += (row.robot_pos - log.rows[i - 1].robot_pos).norm();
    }
  }
  r.mean_speed = speed_sum / log.rows.size();
  r.min_clearance = min_clear;
  r.min_delta_e = min_de;
  return r;
}

std::string report_to_text(const RunReport& r, const std::string& label) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "[%s]\n"
                "status          = %s\n"
                "completion_time = %.6f s\n"
                "path_length     = %.6f m\n"
                "mean_speed      = %.6f m/s\n"
                "max_speed       = %.6f m/s\n"
                "min_clearance   = %.6f m\n"
                "min_delta_e     = %.6g\n",
                label.c_str(), to_string(r.status).c_str(),
                r.completion_time, r.path_length, r.mean_speed, r.max_speed,
                r.min_clearance, r.min_delta_e);
  return buf;
}

}  // namespace sddm
