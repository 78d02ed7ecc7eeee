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

#include "sddm/scenario.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace sddm {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_numbers(const std::string& value, int line,
                                  std::size_t expected) {
  std::vector<double> out;
  std::istringstream in(value);
  double v;
  while (in >> v) out.push_back(v);
  std::string rest;
  if (in.clear(), in >> rest) {
    throw ScenarioParseError(line, "expected numbers, got '" + value + "'");
  }
  if (out.size() != expected) {
    throw ScenarioParseError(
        line, "expected " + std::to_string(expected) + " numbers, got " +
                  std::to_string(out.size()));
  }
  return out;
}

bool parse_bool(const std::string& value, int line) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ScenarioParseError(line, "expected true/false, got '" + value + "'");
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario sc;
  sc.path = PathSpec();
  std::vector<Vec2> waypoints;
  PointCloud cloud;
  MappingConfig mapping;
  bool has_mapping = false;
  bool has_bounds = false;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        throw ScenarioParseError(line, "malformed section header");
      }
      section = s.substr(1, s.size() - 2);
      if (section != "workspace" && section != "params" && section != "sim" &&
          section != "initial" && section != "path" &&
          section != "obstacles" && section != "mapping") {
        throw ScenarioParseError(line, "unknown section [" + section + "]");
      }
      if (section == "mapping") has_mapping = true;
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ScenarioParseError(line, "expected 'key = value'");
    }
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section.empty()) {
      throw ScenarioParseError(line, "key outside any section");
    }

    if (section == "workspace") {
      if (key == "bounds") {
        const auto v = parse_numbers(value, line, 4);
        sc.env.bounds = {{v[0], v[1]}, {v[2], v[3]}};
        if (!(v[2] > v[0]) || !(v[3] > v[1])) {
          throw ScenarioParseError(line, "degenerate workspace bounds");
        }
        has_bounds = true;
      } else {
        throw ScenarioParseError(line, "unknown key '" + key + "'");
      }
    } else if (section == "params") {
      const double v = parse_numbers(value, line, 1)[0];
      if (key == "k") sc.params.k = v;
      else if (key == "zeta") sc.params.zeta = v;
      else if (key == "kg") sc.params.kg = v;
      else if (key == "c1") sc.params.c1 = v;
      else if (key == "c2") sc.params.c2 = v;
      else throw ScenarioParseError(line, "unknown key '" + key + "'");
    } else if (section == "sim") {
      if (key == "dt") sc.dt = parse_numbers(value, line, 1)[0];
      else if (key == "t_max") sc.t_max = parse_numbers(value, line, 1)[0];
      else if (key == "seed") {
        sc.seed = static_cast<std::uint64_t>(parse_numbers(value, line, 1)[0]);
      } else if (key == "validate") {
        sc.validate = parse_bool(value, line);
      } else if (key == "controller") {
        if (value == "sddm") sc.controller = ControllerKind::kSddm;
        else if (value == "euclid") {
          sc.controller = ControllerKind::kEuclideanEnergy;
        } else {
          throw ScenarioParseError(line, "controller must be sddm or euclid");
        }
      } else {
        throw ScenarioParseError(line, "unknown key '" + key + "'");
      }
    } else if (section == "initial") {
      const auto v = parse_numbers(value, line, 2);
      if (key == "robot") sc.initial.robot_pos = {v[0], v[1]};
      else if (key == "velocity") sc.initial.robot_vel = {v[0], v[1]};
      else if (key == "governor") sc.initial.gov_pos = {v[0], v[1]};
      else throw ScenarioParseError(line, "unknown key '" + key + "'");
    } else if (section == "path") {
      if (key == "waypoint") {
        const auto v = parse_numbers(value, line, 2);
        waypoints.push_back({v[0], v[1]});
      } else {
        throw ScenarioParseError(line, "unknown key '" + key + "'");
      }
    } else if (section == "obstacles") {
      if (key == "circle") {
        const auto v = parse_numbers(value, line, 3);
        if (!(v[2] > 0.0)) {
          throw ScenarioParseError(line, "circle radius must be > 0");
        }
        sc.env.obstacles.emplace_back(Circle{{v[0], v[1]}, v[2]});
      } else if (key == "segment") {
        const auto v = parse_numbers(value, line, 4);
        if (v[0] == v[2] && v[1] == v[3]) {
          throw ScenarioParseError(line, "segment endpoints coincide");
        }
        sc.env.obstacles.emplace_back(
            Segment{{v[0], v[1]}, {v[2], v[3]}});
      } else if (key == "point") {
        const auto v = parse_numbers(value, line, 2);
        cloud.points.push_back({v[0], v[1]});
      } else {
        throw ScenarioParseError(line, "unknown key '" + key + "'");
      }
    } else if (section == "mapping") {
      if (key == "goal") {
        const auto v = parse_numbers(value, line, 2);
        mapping.goal = {v[0], v[1]};
      } else if (key == "beams") {
        sc.lidar.beams = static_cast<int>(parse_numbers(value, line, 1)[0]);
      } else if (key == "max_range") {
        sc.lidar.max_range = parse_numbers(value, line, 1)[0];
      } else if (key == "resolution") {
        mapping.resolution = parse_numbers(value, line, 1)[0];
      } else if (key == "inflate_margin") {
        mapping.inflate_margin = parse_numbers(value, line, 1)[0];
      } else if (key == "replan_period") {
        mapping.replan_period = parse_numbers(value, line, 1)[0];
      } else if (key == "sensor_period") {
        mapping.sensor_period = parse_numbers(value, line, 1)[0];
      } else {
        throw ScenarioParseError(line, "unknown key '" + key + "'");
      }
    }
  }

  if (!has_bounds) {
    throw ScenarioParseError(line, "missing [workspace] bounds");
  }
  if (!cloud.points.empty()) {
    sc.env.obstacles.emplace_back(std::move(cloud));
  }
  if (has_mapping) {
    sc.mapping = mapping;
    if (!waypoints.empty()) {
      throw ScenarioParseError(line,
                               "mapping mode plans its own path; remove "
                               "[path]");
    }
  } else {
    if (waypoints.size() < 2) {
      throw ScenarioParseError(line, "need at least two path waypoints");
    }
    sc.path = PathSpec(std::move(waypoints));
  }
  if (!(sc.params.k > 0.0) || !(sc.params.zeta > 0.0) ||
      !(sc.params.kg >= 0.0) || !(sc.params.c1 > 0.0) ||
      !(sc.params.c2 > sc.params.c1)) {
    throw ScenarioParseError(line, "invalid controller parameters");
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open scenario file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace sddm
