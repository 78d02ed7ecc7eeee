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

#include "sddm/planner.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace sddm {
namespace {

constexpr double kCornerEps = 1e-12;

// Visits every cell traversed by the segment from a to b, in order.
// When the segment passes (numerically) through a cell corner, both
// corner-adjacent cells are visited as well, making the traversal a
// supercover. Returns false if the visitor asks to stop.
template <typename Visit>
bool traverse(const OccupancyGrid& grid, Vec2 a, Vec2 b, Visit&& visit) {
  const double len = (b - a).norm();
  auto [ix, iy] = grid.world_to_cell(a);
  const auto [gx, gy] = grid.world_to_cell(b);
  if (!visit(ix, iy, 0.0)) return false;
  if (len <= 0.0) return true;
  const Vec2 dir = (1.0 / len) * (b - a);
  const int step_x = dir.x > 0.0 ? 1 : (dir.x < 0.0 ? -1 : 0);
  const int step_y = dir.y > 0.0 ? 1 : (dir.y < 0.0 ? -1 : 0);
  const double res = grid.resolution();
  const auto boundary = [&](int i, int s) {
    return (i + (s > 0 ? 1 : 0)) * res;
  };
  const Vec2 rel = a - grid.origin();
  double t_max_x = step_x != 0
                       ? (boundary(ix, step_x) - rel.x) / dir.x
                       : std::numeric_limits<double>::infinity();
  double t_max_y = step_y != 0
                       ? (boundary(iy, step_y) - rel.y) / dir.y
                       : std::numeric_limits<double>::infinity();
  const double t_delta_x =
      step_x != 0 ? res / std::abs(dir.x)
                  : std::numeric_limits<double>::infinity();
  const double t_delta_y =
      step_y != 0 ? res / std::abs(dir.y)
                  : std::numeric_limits<double>::infinity();
  for (int guard = 0; guard < 4 * (grid.width() + grid.height() + 2);
       ++guard) {
    if (ix == gx && iy == gy) return true;
    const double t = std::min(t_max_x, t_max_y);
    if (t > len + kCornerEps) return true;
    if (std::abs(t_max_x - t_max_y) <= kCornerEps * std::max(1.0, len)) {
      // Corner crossing: include both side cells.
      if (!visit(ix + step_x, iy, t)) return false;
      if (!visit(ix, iy + step_y, t)) return false;
      ix += step_x;
      iy += step_y;
      t_max_x += t_delta_x;
      t_max_y += t_delta_y;
    } else if (t_max_x < t_max_y) {
      ix += step_x;
      t_max_x += t_delta_x;
    } else {
      iy += step_y;
      t_max_y += t_delta_y;
    }
    if (!visit(ix, iy, t)) return false;
  }
  return true;
}

}  // namespace

OccupancyGrid::OccupancyGrid(Vec2 origin, double resolution, int width,
                             int height)
    : origin_(origin), resolution_(resolution), width_(width),
      height_(height),
      cells_(static_cast<std::size_t>(width) * height, CellState::kUnknown) {
  if (resolution <= 0.0 || width <= 0 || height <= 0) {
    throw std::invalid_argument("OccupancyGrid: invalid dimensions");
  }
}

std::pair<int, int> OccupancyGrid::world_to_cell(Vec2 p) const {
  return {static_cast<int>(std::floor((p.x - origin_.x) / resolution_)),
          static_cast<int>(std::floor((p.y - origin_.y) / resolution_))};
}

Vec2 OccupancyGrid::cell_center(int ix, int iy) const {
  return {origin_.x + (ix + 0.5) * resolution_,
          origin_.y + (iy + 0.5) * resolution_};
}

std::string OccupancyGrid::dump() const {
  std::ostringstream out;
  out << width_ << ' ' << height_ << ' ' << resolution_ << ' ' << origin_.x
      << ' ' << origin_.y << '\n';
  for (int iy = 0; iy < height_; ++iy) {
    for (int ix = 0; ix < width_; ++ix) {
      switch (at(ix, iy)) {
        case CellState::kUnknown: out << 'U'; break;
        case CellState::kFree: out << 'F'; break;
        case CellState::kOccupied: out << 'O'; break;
      }
    }
    out << '\n';
  }
  return out.str();
}

void integrate_scan(OccupancyGrid& grid, const LidarScan& scan) {
  for (std::size_t i = 0; i < scan.angles.size(); ++i) {
    const double range = scan.ranges[i];
    const Vec2 dir{std::cos(scan.angles[i]), std::sin(scan.angles[i])};
    const Vec2 end = scan.origin + range * dir;
    const bool hit = range < scan.max_range - 1e-9;
    const auto [ex, ey] = grid.world_to_cell(end);
    traverse(grid, scan.origin, end, [&](int ix, int iy, double) {
      if (!grid.in_bounds(ix, iy)) return true;
      if (ix == ex && iy == ey) {
        if (hit) grid.set(ix, iy, CellState::kOccupied);
        return true;
      }
      // Occupied cells are never demoted.
      if (grid.at(ix, iy) == CellState::kUnknown) {
        grid.set(ix, iy, CellState::kFree);
      }
      return true;
    });
  }
}

OccupancyGrid inflate(const OccupancyGrid& grid, double robot_margin) {
  OccupancyGrid out = grid;
  if (robot_margin <= 0.0) return out;
  const double r_cells = robot_margin / grid.resolution();
  const int r = static_cast<int>(std::floor(r_cells + 1e-9));
  const double r_sq = r_cells * r_cells + 1e-9;
  for (int iy = 0; iy < grid.height(); ++iy) {
    for (int ix = 0; ix < grid.width(); ++ix) {
      if (grid.at(ix, iy) != CellState::kOccupied) continue;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          if (dx * dx + dy * dy > r_sq) continue;
          if (out.in_bounds(ix + dx, iy + dy)) {
            out.set(ix + dx, iy + dy, CellState::kOccupied);
          }
        }
      }
    }
  }
  return out;
}

namespace {

struct OpenNode {
  double f;
  int index;  // tie-break for determinism
};
struct OpenNodeGreater {
  bool operator()(const OpenNode& a, const OpenNode& b) const {
    if (a.f != b.f) return a.f > b.f;
    return a.index > b.index;
  }
};

// Conservative planning: only cells observed free are traversable.
bool traversable(CellState s) { return s == CellState::kFree; }

double octile(int dx, int dy, double res) {
  dx = std::abs(dx);
  dy = std::abs(dy);
  return res * (std::max(dx, dy) + (M_SQRT2 - 1.0) * std::min(dx, dy));
}

// Nearest free cell to (cx, cy) within a bounded Chebyshev radius.
std::optional<std::pair<int, int>> nearest_free_cell(const OccupancyGrid& g,
                                                     int cx, int cy,
                                                     int radius) {
  if (g.in_bounds(cx, cy) && traversable(g.at(cx, cy))) {
    return std::make_pair(cx, cy);
  }
  std::optional<std::pair<int, int>> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (int ring = 1; ring <= radius; ++ring) {
    for (int dy = -ring; dy <= ring; ++dy) {
      for (int dx = -ring; dx <= ring; ++dx) {
        if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
        const int ix = cx + dx, iy = cy + dy;
        if (!g.in_bounds(ix, iy) || !traversable(g.at(ix, iy))) {
          continue;
        }
        const double d = dx * dx + dy * dy;
        if (d < best_d) {
          best_d = d;
          best = std::make_pair(ix, iy);
        }
      }
    }
    if (best) return best;  // a full extra ring cannot beat sqrt(2)*ring
  }
  return best;
}

bool frontier(const OccupancyGrid& g, int ix, int iy) {
  if (g.at(ix, iy) != CellState::kFree) return false;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if (dx == 0 && dy == 0) continue;
      if (g.in_bounds(ix + dx, iy + dy) &&
          g.at(ix + dx, iy + dy) == CellState::kUnknown) {
        return true;
      }
    }
  }
  return false;
}

// Planning target for a goal whose cell is not free. A goal swallowed by
// inflation resolves to a nearby free cell. An unobserved goal resolves
// to the frontier cell (free, adjacent to unknown) nearest the goal, so
// successive replans explore toward it instead of parking at the free
// cell closest to the goal, which can sit on the wrong side of a wall.
std::optional<std::pair<int, int>> select_target(const OccupancyGrid& g,
                                                 int cx, int cy) {
  if (auto near = nearest_free_cell(g, cx, cy, 10)) return near;
  std::optional<std::pair<int, int>> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (int iy = 0; iy < g.height(); ++iy) {
    for (int ix = 0; ix < g.width(); ++ix) {
      if (!frontier(g, ix, iy)) continue;
      const double d = static_cast<double>(ix - cx) * (ix - cx) +
                       static_cast<double>(iy - cy) * (iy - cy);
      if (d < best_d) {
        best_d = d;
        best = std::make_pair(ix, iy);
      }
    }
  }
  if (best) return best;
  return nearest_free_cell(g, cx, cy, g.width() + g.height());
}

}  // namespace

std::optional<std::vector<Vec2>> astar(const OccupancyGrid& grid, Vec2 start,
                                       Vec2 goal) {
  const auto [sx, sy] = grid.world_to_cell(start);
  if (!grid.in_bounds(sx, sy) || !traversable(grid.at(sx, sy))) {
    return std::nullopt;
  }
  const auto [gx0, gy0] = grid.world_to_cell(goal);
  const auto target = select_target(grid, gx0, gy0);
  if (!target) return std::nullopt;
  const auto [gx, gy] = *target;

  const int w = grid.width(), h = grid.height();
  const double res = grid.resolution();
  const auto id = [w](int ix, int iy) { return iy * w + ix; };
  std::vector<double> g_cost(static_cast<std::size_t>(w) * h,
                             std::numeric_limits<double>::infinity());
  std::vector<int> parent(static_cast<std::size_t>(w) * h, -1);
  std::priority_queue<OpenNode, std::vector<OpenNode>, OpenNodeGreater> open;

  g_cost[id(sx, sy)] = 0.0;
  open.push({octile(gx - sx, gy - sy, res), id(sx, sy)});

  static constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  static constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};

  while (!open.empty()) {
    const auto [f, cur] = open.top();
    open.pop();
    const int cx = cur % w, cy = cur / w;
    if (f > g_cost[cur] + octile(gx - cx, gy - cy, res) + 1e-12) {
      continue;  // stale entry
    }
    if (cx == gx && cy == gy) break;
    for (int n = 0; n < 8; ++n) {
      const int nx = cx + kDx[n], ny = cy + kDy[n];
      if (!grid.in_bounds(nx, ny) || !traversable(grid.at(nx, ny))) {
        continue;
      }
      const bool diagonal = n >= 4;
      if (diagonal) {
        // No corner cutting: both orthogonal neighbors must be open.
        if (!traversable(grid.at(nx, cy)) || !traversable(grid.at(cx, ny))) {
          continue;
        }
      }
      const double step = diagonal ? M_SQRT2 * res : res;
      const double tentative = g_cost[cur] + step;
      if (tentative < g_cost[id(nx, ny)] - 1e-15) {
        g_cost[id(nx, ny)] = tentative;
        parent[id(nx, ny)] = cur;
        open.push({tentative + octile(gx - nx, gy - ny, res), id(nx, ny)});
      }
    }
  }

  if (!std::isfinite(g_cost[id(gx, gy)])) return std::nullopt;
  std::vector<Vec2> path;
  for (int cur = id(gx, gy); cur != -1; cur = parent[cur]) {
    path.push_back(grid.cell_center(cur % w, cur / w));
  }
  std::reverse(path.begin(), path.end());
  return path;
}

double grid_path_cost(const OccupancyGrid& grid,
                      const std::vector<Vec2>& cells) {
  double cost = 0.0;
  for (std::size_t i = 1; i < cells.size(); ++i) {
    cost += (cells[i] - cells[i - 1]).norm();
  }
  (void)grid;
  return cost;
}

bool line_of_sight(const OccupancyGrid& grid, Vec2 a, Vec2 b) {
  return traverse(grid, a, b, [&](int ix, int iy, double) {
    return grid.in_bounds(ix, iy) && traversable(grid.at(ix, iy));
  });
}

PathSpec simplify_path(const std::vector<Vec2>& cells,
                       const OccupancyGrid& grid) {
  if (cells.size() < 2) {
    throw std::invalid_argument("simplify_path: need at least two cells");
  }
  std::vector<Vec2> kept;
  kept.push_back(cells.front());
  std::size_t i = 0;
  while (i + 1 < cells.size()) {
    std::size_t j = cells.size() - 1;
    for (; j > i + 1; --j) {
      if (line_of_sight(grid, cells[i], cells[j])) break;
    }
    kept.push_back(cells[j]);
    i = j;
  }
  return PathSpec(std::move(kept));
}

}  // namespace sddm
