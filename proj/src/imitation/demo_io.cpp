// Copyright 2026 The audamp Authors
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

#include "audamp/imitation/demo_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <string>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "audamp/common/error.hpp"

namespace audamp::imitation {

void write_jsonl(std::ostream& out, std::span<const env::Trajectory> trajectories) {
  for (const auto& traj : trajectories) {
    for (const auto& s : traj.samples) {
      nlohmann::ordered_json line = {{"ep", traj.episode_id}, {"t", s.t},       {"x", s.position.x},
                                     {"y", s.position.y},     {"h", s.heading}, {"idle", s.idle_state}};
      out << line.dump() << '\n';
    }
  }
}

void write_csv(std::ostream& out, std::span<const env::Trajectory> trajectories) {
  out << "ep,t,x,y,h,idle\n";
  for (const auto& traj : trajectories) {
    for (const auto& s : traj.samples) {
      out << fmt::format("{},{},{},{},{},{}\n", traj.episode_id, s.t, s.position.x, s.position.y, s.heading,
                         s.idle_state);
    }
  }
}

namespace {

void fill_missing_headings(env::Trajectory& traj, const std::vector<bool>& has_heading) {
  auto& s = traj.samples;
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (has_heading[k]) continue;
    const Vec2 d = s[k].position - s[k - 1].position;
    s[k].heading = d.norm() > 1e-12 ? std::atan2(d.y, d.x) : s[k - 1].heading;
  }
  if (!s.empty() && !has_heading[0]) s[0].heading = s.size() > 1 ? s[1].heading : 0.0;
}

}  // namespace

std::vector<env::Trajectory> read_jsonl(std::istream& in) {
  std::vector<env::Trajectory> trajectories;
  std::vector<std::vector<bool>> has_heading;
  std::map<std::int64_t, std::size_t> index;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto ep = j.at("ep").get<std::int64_t>();
      env::TrajectorySample sample;
      sample.t = j.at("t").get<double>();
      sample.position = {j.at("x").get<double>(), j.at("y").get<double>()};
      const bool heading_present = j.contains("h");
      if (heading_present) sample.heading = j.at("h").get<double>();
      sample.idle_state = j.value("idle", 0);
      if (!std::isfinite(sample.t) || !std::isfinite(sample.position.x) || !std::isfinite(sample.position.y)) {
        throw Error("non-finite value");
      }
      auto [it, inserted] = index.try_emplace(ep, trajectories.size());
      if (inserted) {
        trajectories.push_back({ep, {}});
        has_heading.emplace_back();
      }
      trajectories[it->second].samples.push_back(sample);
      has_heading[it->second].push_back(heading_present);
    } catch (const nlohmann::json::exception& e) {
      throw Error(fmt::format("line {}: {}", line_no, e.what()));
    } catch (const Error& e) {
      throw Error(fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  for (std::size_t i = 0; i < trajectories.size(); ++i) fill_missing_headings(trajectories[i], has_heading[i]);
  return trajectories;
}

void write_jsonl_file(const std::filesystem::path& path, std::span<const env::Trajectory> trajectories) {
  std::ofstream out(path);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  write_jsonl(out, trajectories);
}

void write_csv_file(const std::filesystem::path& path, std::span<const env::Trajectory> trajectories) {
  std::ofstream out(path);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  write_csv(out, trajectories);
}

std::vector<env::Trajectory> read_jsonl_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open {}", path.string()));
  return read_jsonl(in);
}

}  // namespace audamp::imitation
