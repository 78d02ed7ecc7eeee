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

#ifndef SDDM_PLANNER_H_
#define SDDM_PLANNER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sddm/governor.h"
#include "sddm/metric.h"

namespace sddm {

enum class CellState : std::uint8_t { kUnknown, kFree, kOccupied };

class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  OccupancyGrid(Vec2 origin, double resolution, int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  Vec2 origin() const { return origin_; }

  bool in_bounds(int ix, int iy) const {
    return ix >= 0 && ix < width_ && iy >= 0 && iy < height_;
  }
  CellState at(int ix, int iy) const { return cells_[iy * width_ + ix]; }
  void set(int ix, int iy, CellState s) { cells_[iy * width_ + ix] = s; }

  // Cell containing p; may be out of bounds.
  std::pair<int, int> world_to_cell(Vec2 p) const;
  Vec2 cell_center(int ix, int iy) const;

  // Text export: a header line "width height resolution ox oy" followed by
  // one row per line (bottom row first), one of 'U'/'F'/'O' per cell.
  std::string dump() const;

 private:
  Vec2 origin_;
  double resolution_ = 0.1;
  int width_ = 0;
  int height_ = 0;
  std::vector<CellState> cells_;
};

struct LidarScan {
  Vec2 origin;
  std::vector<double> angles;
  std::vector<double> ranges;  // in (0, max_range]
  double max_range = 5.0;
};

// Marks cells traversed by each beam free up to the return distance and the
// terminal cell occupied when the beam hit something. Occupied cells are
// never demoted, so repeated identical scans are idempotent. Out-of-bounds
// portions of beams are clipped.
void integrate_scan(OccupancyGrid& grid, const LidarScan& scan);

// Disk dilation of the occupied set with radius robot_margin (in meters).
OccupancyGrid inflate(const OccupancyGrid& grid, double robot_margin);

// 8-connected A* over free cells with octile heuristic. Unknown cells
// are not traversable. If the goal cell is not free, the target becomes
// a nearby free cell when one exists, otherwise the frontier cell
// nearest the goal, so replanning explores toward an unobserved goal.
// Returns cell-center waypoints, or nullopt when no path exists.
std::optional<std::vector<Vec2>> astar(const OccupancyGrid& grid, Vec2 start,
                                       Vec2 goal);

// Cost of the cell path under the A* edge costs (resolution and
// sqrt(2) * resolution).
double grid_path_cost(const OccupancyGrid& grid,
                      const std::vector<Vec2>& cells);

// Greedy line-of-sight shortcutting over free cells (supercover ray
// traversal), re-parameterized by arc length.
PathSpec simplify_path(const std::vector<Vec2>& cells,
                       const OccupancyGrid& grid);

// True iff every cell touched by the segment is free.
bool line_of_sight(const OccupancyGrid& grid, Vec2 a, Vec2 b);

}  // namespace sddm

#endif  // SDDM_PLANNER_H_
