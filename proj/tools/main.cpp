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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "CLI11.hpp"
#include "sddm/report.h"
#include "sddm/scenario.h"
#include "sddm/svg.h"

namespace fs = std::filesystem;

namespace {

// Exit-code contract: 0 success, 2 input error, 3 collision, 4 timeout,
// 5 infeasible alpha, 6 bound violation.
constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCollision = 3;
constexpr int kExitTimeout = 4;
constexpr int kExitInfeasible = 5;
constexpr int kExitBound = 6;

int status_exit_code(sddm::RunStatus s) {
  switch (s) {
    case sddm::RunStatus::kGoalReached: return kExitOk;
    case sddm::RunStatus::kCollision: return kExitCollision;
    case sddm::RunStatus::kTimeout: return kExitTimeout;
    case sddm::RunStatus::kNoFeasibleAlpha: return kExitInfeasible;
  }
  return kExitInput;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

struct RunOptions {
  std::string scenario_path;
  std::string out_dir;
  double dt = -1.0;
  std::string controller;
  long long seed = -1;
};

sddm::Scenario load_with_overrides(const RunOptions& opt) {
  sddm::Scenario sc = sddm::load_scenario(opt.scenario_path);
  if (opt.dt > 0.0) sc.dt = opt.dt;
  if (opt.controller == "sddm") {
    sc.controller = sddm::ControllerKind::kSddm;
  } else if (opt.controller == "euclid") {
    sc.controller = sddm::ControllerKind::kEuclideanEnergy;
  }
  if (opt.seed >= 0) sc.seed = static_cast<std::uint64_t>(opt.seed);
  return sc;
}

int cmd_run(const RunOptions& opt) {
  sddm::Scenario sc;
  try {
    sc = load_with_overrides(opt);
    sddm::validate_scenario(sc);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s: %s\n", opt.scenario_path.c_str(), e.what());
    return kExitInput;
  }
  fs::create_directories(opt.out_dir);
  const sddm::TrajectoryLog log = sddm::run(sc);
  const sddm::RunReport report = sddm::summarize(log);
  write_file(fs::path(opt.out_dir) / "trajectory.csv", sddm::log_to_csv(log));
  write_file(fs::path(opt.out_dir) / "report.txt",
             sddm::report_to_text(report, sddm::to_string(sc.controller)));
  write_file(fs::path(opt.out_dir) / "plot.svg",
             sddm::render_svg(sc.env, sc.path,
                              {{&log, sc.controller, sc.params, "#2a7"}}));
  std::printf("%s: %s in %.3f s\n", sddm::to_string(sc.controller).c_str(),
              sddm::to_string(log.status).c_str(), log.completion_time);
  return status_exit_code(log.status);
}

int cmd_compare(const RunOptions& opt) {
  sddm::Scenario sc;
  try {
    sc = load_with_overrides(opt);
    sddm::validate_scenario(sc);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s: %s\n", opt.scenario_path.c_str(), e.what());
    return kExitInput;
  }
  fs::create_directories(opt.out_dir);

  sddm::Scenario sc_sddm = sc;
  sc_sddm.controller = sddm::ControllerKind::kSddm;
  sddm::Scenario sc_euclid = sc;
  sc_euclid.controller = sddm::ControllerKind::kEuclideanEnergy;

  const sddm::TrajectoryLog log_sddm = sddm::run(sc_sddm);
  const sddm::TrajectoryLog log_euclid = sddm::run(sc_euclid);
  const sddm::RunReport rep_sddm = sddm::summarize(log_sddm);
  const sddm::RunReport rep_euclid = sddm::summarize(log_euclid);

  write_file(fs::path(opt.out_dir) / "trajectory_sddm.csv",
             sddm::log_to_csv(log_sddm));
  write_file(fs::path(opt.out_dir) / "trajectory_euclid.csv",
             sddm::log_to_csv(log_euclid));

  std::string report = sddm::report_to_text(rep_sddm, "sddm") + "\n" +
                       sddm::report_to_text(rep_euclid, "euclid");
  char buf[128];
  const double ratio = rep_euclid.completion_time > 0.0
                           ? rep_sddm.completion_time /
                                 rep_euclid.completion_time
                           : 0.0;
  std::snprintf(buf, sizeof(buf),
                "\ncompletion_time_ratio (sddm/euclid) = %.6f\n", ratio);
  report += buf;
  write_file(fs::path(opt.out_dir) / "report.txt", report);
  write_file(
      fs::path(opt.out_dir) / "plot.svg",
      sddm::render_svg(sc.env, sc.path,
                       {{&log_sddm, sddm::ControllerKind::kSddm, sc.params,
                         "#2a7"},
                        {&log_euclid, sddm::ControllerKind::kEuclideanEnergy,
                         sc.params, "#27a"}}));
  std::printf("completion_time_ratio (sddm/euclid) = %.6f\n", ratio);

  if (log_sddm.status != sddm::RunStatus::kGoalReached) {
    return status_exit_code(log_sddm.status);
  }
  return status_exit_code(log_euclid.status);
}

struct BoundCase {
  sddm::DoubleIntegratorGains gains;
  sddm::SymMat2 q;
  sddm::StateVec s0;
};

BoundCase random_bound_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uk(0.25, 4.0);
  std::uniform_real_distribution<double> uang(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> uc1(0.5, 2.0);
  std::uniform_real_distribution<double> uratio(1.5, 8.0);
  std::uniform_real_distribution<double> us(-3.0, 3.0);
  BoundCase c;
  c.gains.k = uk(rng);
  c.gains.zeta = std::sqrt(8.0 * c.gains.k);  // critically damped
  const double ang = uang(rng);
  const double c1 = uc1(rng);
  const double c2 = c1 * uratio(rng);
  c.q = sddm::directional_matrix({std::cos(ang), std::sin(ang)}, c1, c2).q;
  c.s0 = {{us(rng), us(rng)}, {us(rng), us(rng)}};
  return c;
}

// Independent dense-grid maximum of |z(t)|^2 via matrix-exponential
// stepping at dt = 1e-3 / |lambda|.
double dense_oracle(const sddm::ClosedLoopSystem& sys,
                    const sddm::StateVec& s0) {
  const double dt = 1e-3 / std::abs(sys.max_real_eig);
  const double horizon = 40.0 / std::abs(sys.max_real_eig);
  const int n = static_cast<int>(horizon / dt);
  const sddm::Mat4 step = (sys.a_bar * dt).exp();
  sddm::Vec4 s = s0.to_vec4();
  double best = sys.output_sq(s);
  for (int i = 0; i < n; ++i) {
    s = step * s;
    best = std::max(best, sys.output_sq(s));
  }
  return best;
}

int cmd_boundcheck(int count, long long seed, const std::string& out_dir) {
  if (count < 1) {
    std::fprintf(stderr, "boundcheck: count must be >= 1\n");
    return kExitInput;
  }
  fs::create_directories(out_dir);
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  std::string csv = "case,eta,delta,oracle,ratio\n";
  std::vector<double> ratios;
  int violations = 0;
  char buf[256];
  for (int i = 0; i < count; ++i) {
    const BoundCase c = random_bound_case(rng);
    const sddm::ClosedLoopSystem sys =
        sddm::build_double_integrator(c.gains, c.q);
    const sddm::OutputPeakBound b = sddm::bound(sys, c.s0);
    const double oracle = dense_oracle(sys, c.s0);
    const double ratio = b.eta > 0.0 ? b.delta / b.eta : 1.0;
    ratios.push_back(ratio);
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.6f\n", i, b.eta,
                  b.delta, oracle, ratio);
    csv += buf;
    if (oracle > b.eta + 1e-9 || b.eta > b.delta + 1e-9) {
      ++violations;
      std::fprintf(stderr,
                   "case %d: ordering violated (oracle=%.12g eta=%.12g "
                   "delta=%.12g; k=%.6f s0=[%g %g %g %g])\n",
                   i, oracle, b.eta, b.delta, c.gains.k, c.s0.pos_err.x,
                   c.s0.pos_err.y, c.s0.vel.x, c.s0.vel.y);
    }
  }
  write_file(fs::path(out_dir) / "boundcheck.csv", csv);
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  std::printf("cases=%d violations=%d median_ratio=%.6f\n", count, violations,
              median);
  return violations == 0 ? kExitOk : kExitBound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directional-metric reference-governor navigation stack"};
  app.require_subcommand(1);

  RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "Simulate one scenario");
  run->add_option("scenario", run_opt.scenario_path, "Scenario file")
      ->required();
  run->add_option("--out", run_opt.out_dir, "Output directory")->required();
  run->add_option("--dt", run_opt.dt, "Override integration step (s)");
  run->add_option("--controller", run_opt.controller, "sddm|euclid")
      ->check(CLI::IsMember({"sddm", "euclid"}));
  run->add_option("--seed", run_opt.seed, "Override random seed");

  RunOptions cmp_opt;
  CLI::App* cmp =
      app.add_subcommand("compare", "Run both controllers on one scenario");
  cmp->add_option("scenario", cmp_opt.scenario_path, "Scenario file")
      ->required();
  cmp->add_option("--out", cmp_opt.out_dir, "Output directory")->required();

  int bc_count = 100;
  long long bc_seed = 0;
  std::string bc_out;
  CLI::App* bc = app.add_subcommand(
      "boundcheck", "Verify peak/bound ordering on random cases");
  bc->add_option("--count", bc_count, "Number of random cases");
  bc->add_option("--seed", bc_seed, "Random seed");
  bc->add_option("--out", bc_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (run->parsed()) return cmd_run(run_opt);
    if (cmp->parsed()) return cmd_compare(cmp_opt);
    return cmd_boundcheck(bc_count, bc_seed, bc_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
}
