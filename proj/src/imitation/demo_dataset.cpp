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

#include "audamp/imitation/demo_dataset.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "audamp/common/error.hpp"

namespace audamp::imitation {

double DemoDataset::total_duration() const {
  double total = 0.0;
  for (const auto& ep : episodes) {
    if (ep.samples.size() >= 2) total += ep.samples.back().t - ep.samples.front().t;
  }
  return total;
}

DemoDataset generate_oracle_demos(const env::EnvConfig& config, int n_episodes, std::uint64_t seed,
                                  const OracleOptions& options) {
  if (n_episodes < 1) throw Error("generate_oracle_demos: n_episodes must be >= 1");
  env::CorridorEnv corridor(config);
  OracleTeacher teacher(options);
  DemoDataset dataset;
  dataset.sample_dt = config.dt;
  dataset.source = DemoSource::kSyntheticOracle;
  dataset.episodes.reserve(static_cast<std::size_t>(n_episodes));
  for (int ep = 0; ep < n_episodes; ++ep) {
    env::Trajectory trajectory =
        env::run_episode(corridor, teacher, derive_seed(seed, static_cast<std::uint64_t>(ep)));
    trajectory.episode_id = ep;
    dataset.episodes.push_back(std::move(trajectory));
  }
  return dataset;
}

std::vector<env::Action> derive_actions(const env::Trajectory& trajectory, const env::EnvConfig& config) {
  const double dt = env::uniform_interval(trajectory);
  std::vector<env::Action> actions;
  actions.reserve(trajectory.samples.size() - 1);
  for (std::size_t k = 1; k < trajectory.samples.size(); ++k) {
    const auto& a = trajectory.samples[k - 1];
    const auto& b = trajectory.samples[k];
    env::Action action;
    action.speed = std::clamp(distance(b.position, a.position) / dt, 0.0, config.v_max);
    action.turn_rate =
        std::clamp(wrap_angle(b.heading - a.heading) / dt, -config.omega_max, config.omega_max);
    action.idle_state = std::clamp(b.idle_state, 0, env::kIdleStateCount - 1);
    actions.push_back(action);
  }
  return actions;
}

std::vector<Vec2> integrate_actions(const env::Trajectory& trajectory, std::span<const env::Action> actions,
                                    const env::EnvConfig& config) {
  const env::FloorPlan plan = env::build_floorplan(config);
  const double dt = env::uniform_interval(trajectory);
  Vec2 position = trajectory.samples.front().position;
  double heading = trajectory.samples.front().heading;
  std::vector<Vec2> out{position};
  for (const env::Action& action : actions) {
    heading = wrap_angle(heading + action.turn_rate * dt);
    position = plan.clamp(position + Vec2{std::cos(heading), std::sin(heading)} * (action.speed * dt));
    out.push_back(position);
  }
  return out;
}

void validate_dataset(const DemoDataset& dataset, const env::EnvConfig& config) {
  const env::FloorPlan plan = env::build_floorplan(config);
  for (const auto& ep : dataset.episodes) {
    const double dt = env::uniform_interval(ep);
    if (std::abs(dt - config.dt) > 1e-9) {
      throw Error(fmt::format("episode {} sampled at {} s, expected {} s", ep.episode_id, dt, config.dt));
    }
    if (!env::inside_corridor(ep, plan)) {
      throw Error(fmt::format("episode {} leaves the corridor", ep.episode_id));
    }
  }
}

std::vector<LabeledTransition> labeled_transitions(const env::Trajectory& trajectory,
                                                   const env::EnvConfig& config) {
  const env::FloorPlan plan = env::build_floorplan(config);
  const std::vector<env::Action> actions = derive_actions(trajectory, config);
  std::vector<LabeledTransition> out;
  out.reserve(actions.size());
  env::AgentState state;
  for (std::size_t k = 0; k < actions.size(); ++k) {
    const auto& sample = trajectory.samples[k];
    state.position = sample.position;
    state.heading = sample.heading;
    state.time = sample.t - trajectory.samples.front().t;
    // The spawn pose never counts as an entry, matching CorridorEnv::reset.
    if (k > 0) {
      const int zone = env::zone_at(plan, sample.position);
      if (zone >= 0) state.visited[static_cast<std::size_t>(zone)] = true;
    }
    out.push_back({env::observe(plan, config, state), actions[k]});
  }
  return out;
}

std::vector<LabeledTransition> labeled_transitions(const DemoDataset& dataset, const env::EnvConfig& config) {
  std::vector<LabeledTransition> out;
  for (const auto& ep : dataset.episodes) {
    auto part = labeled_transitions(ep, config);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace audamp::imitation
