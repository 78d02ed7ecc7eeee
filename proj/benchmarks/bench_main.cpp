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

#include <benchmark/benchmark.h>

#include <random>

#include "sddm/environment.h"
#include "sddm/planner.h"
#include "sddm/simulator.h"
#include "sddm/trajectory_bounds.h"

namespace {

using namespace sddm;

void BM_DirectionalMatrix(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(directional_matrix({u(rng), u(rng)}, 1.0, 4.0));
  }
}
BENCHMARK(BM_DirectionalMatrix);

void BM_ExactPeak(benchmark::State& state) {
  const ClosedLoopSystem sys = build_double_integrator(
      {}, directional_matrix({1.0, 0.5}, 1.0, 4.0).q);
  const StateVec s0{{-2.0, 0.7}, {0.3, 2.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        exact_peak_critically_damped(sys, s0, -M_SQRT2));
  }
}
BENCHMARK(BM_ExactPeak);

void BM_RelaxedPeak(benchmark::State& state) {
  const ClosedLoopSystem sys = build_double_integrator(
      {}, directional_matrix({1.0, 0.5}, 1.0, 4.0).q);
  const StateVec s0{{-2.0, 0.7}, {0.3, 2.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(relaxed_peak(sys, s0));
  }
}
BENCHMARK(BM_RelaxedPeak);

void BM_DistCircle(benchmark::State& state) {
  const SymMat2 q = directional_matrix({1.0, 1.0}, 1.0, 4.0).q;
  const Circle c{{3.0, 2.0}, 1.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dist_q_circle(q, {0.0, 0.0}, c));
  }
}
BENCHMARK(BM_DistCircle);

void BM_DistSegment(benchmark::State& state) {
  const SymMat2 q = directional_matrix({1.0, 1.0}, 1.0, 4.0).q;
  const Segment s{{-1.0, 3.0}, {4.0, 2.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dist_q_segment(q, {0.0, 0.0}, s));
  }
}
BENCHMARK(BM_DistSegment);

void BM_Astar(benchmark::State& state) {
  OccupancyGrid g({0, 0}, 0.1, 100, 100);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int y = 0; y < 100; ++y) {
    for (int x = 0; x < 100; ++x) {
      g.set(x, y, u(rng) < 0.2 ? CellState::kOccupied : CellState::kFree);
    }
  }
  g.set(0, 0, CellState::kFree);
  g.set(99, 99, CellState::kFree);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        astar(g, g.cell_center(0, 0), g.cell_center(99, 99)));
  }
}
BENCHMARK(BM_Astar);

void BM_SimStep(benchmark::State& state) {
  Scenario sc;
  sc.env.bounds = {{-1, -3}, {12, 3}};
  sc.env.obstacles.emplace_back(Circle{{5, 1.2}, 1.0});
  sc.path = PathSpec({{0, 0}, {10, 0}});
  sc.initial = {{0, 0}, {0, 0}, {0, 0}};
  double held = 0.0;
  RobotGovernorState st = sc.initial;
  for (auto _ : state) {
    benchmark::DoNotOptimize(step(st, sc, sc.env, sc.path, 0.0, held));
  }
}
BENCHMARK(BM_SimStep);

}  // namespace

BENCHMARK_MAIN();
