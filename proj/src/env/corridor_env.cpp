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

#include "audamp/env/corridor_env.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "audamp/common/error.hpp"

namespace audamp::env {

int AgentState::visited_count() const {
  return static_cast<int>(std::count(visited.begin(), visited.end(), true));
}

Action clamp_action(const Action& action, const EnvConfig& config) {
  if (action.idle_state < 0 || action.idle_state >= kIdleStateCount) {
    throw std::invalid_argument(fmt::format("idle_state {} outside [0, {}]", action.idle_state,
                                            kIdleStateCount - 1));
  }
  Action clamped = action;
  clamped.speed = std::clamp(action.speed, 0.0, config.v_max);
  clamped.turn_rate = std::clamp(action.turn_rate, -config.omega_max, config.omega_max);
  return clamped;
}

int nearest_unvisited_zone(const FloorPlan& plan, const std::array<bool, kZoneCount>& visited,
                           Vec2 position) {
  int best = -1;
  double best_distance = 0.0;
  for (const ContentZone& zone : plan.zones) {
    if (visited[static_cast<std::size_t>(zone.index)]) continue;
    const double d = distance(position, zone.center);
    if (best < 0 || d < best_distance) {
      best = zone.index;
      best_distance = d;
    }
  }
  return best;
}

Observation observe(const FloorPlan& plan, const EnvConfig& config, const AgentState& state) {
  Observation obs{};
  obs[kObsPosition] = 2.0 * state.position.x / plan.length - 1.0;
  obs[kObsPosition + 1] = 2.0 * state.position.y / plan.width - 1.0;
  obs[kObsHeading] = std::cos(state.heading);
  obs[kObsHeading + 1] = std::sin(state.heading);
  for (int i = 0; i < kZoneCount; ++i) {
    const auto& zone = plan.zones[static_cast<std::size_t>(i)];
    const Vec2 local = rotate_into_frame(zone.center - state.position, state.heading);
    obs[kObsZoneOffsets + 2 * i] = local.x / plan.length;
    obs[kObsZoneOffsets + 2 * i + 1] = local.y / plan.length;
    obs[kObsVisited + i] = state.visited[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
  }
  obs[kObsWallDistance] = state.position.y / plan.width;
  obs[kObsWallDistance + 1] = (plan.width - state.position.y) / plan.width;
  obs[kObsTime] = state.time / config.horizon;
  return obs;
}

CorridorEnv::CorridorEnv(const EnvConfig& config)
    : config_(config), plan_(build_floorplan(config)) {
  if (!(config_.dt > 0.0)) throw ConfigError("env.dt", "env.dt must be > 0");
  if (!(config_.horizon > 0.0)) throw ConfigError("env.horizon", "env.horizon must be > 0");
  max_steps_ = static_cast<std::int64_t>(std::ceil(config_.horizon / config_.dt - 1e-9));
}

void CorridorEnv::begin_episode(Vec2 position, double heading) {
  state_ = AgentState{};
  state_.position = plan_.clamp(position);
  state_.heading = wrap_angle(heading);
  step_count_ = 0;
  ++episode_id_;
  started_ = true;
}

Observation CorridorEnv::reset(std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double radius = config_.spawn_jitter * std::sqrt(unit(rng));
  const double angle = 2.0 * std::numbers::pi * unit(rng);
  const double heading = std::numbers::pi - 2.0 * std::numbers::pi * unit(rng);
  begin_episode(plan_.spawn_point + Vec2{radius * std::cos(angle), radius * std::sin(angle)},
                heading);
  return observe();
}

Observation CorridorEnv::reset_to(Vec2 position, double heading) {
  begin_episode(position, heading);
  return observe();
}

StepResult CorridorEnv::step(const Action& raw_action) {
  if (!started_) throw Error("step() called before reset()");
  if (state_.done) throw Error(fmt::format("step() called on finished episode {}", episode_id_));

  const Action action = clamp_action(raw_action, config_);
  const double dt = config_.dt;
  const Vec2 before = state_.position;
  const int target = nearest_unvisited_zone(plan_, state_.visited, before);

  state_.heading = wrap_angle(state_.heading + action.turn_rate * dt);
  const Vec2 direction{std::cos(state_.heading), std::sin(state_.heading)};
  state_.position = plan_.clamp(before + direction * (action.speed * dt));
  ++step_count_;
  state_.time = static_cast<double>(step_count_) * dt;

  StepResult result;
  StepEvents& ev = result.events;
  ev.episode_id = episode_id_;
  ev.dt = dt;

  const int zone = zone_at(plan_, state_.position);
  if (zone >= 0) {
    const auto z = static_cast<std::size_t>(zone);
    ev.inside_zone = zone;
    if (!state_.visited[z]) {
      state_.visited[z] = true;
      ev.entered_zone_first_time = zone;
      ev.all_zones_just_completed = state_.visited_count() == kZoneCount;
    }
    const double cap = plan_.zones[z].performance_duration;
    // Remainders below kDwellSlack are rounding residue of the repeated dt sums.
    constexpr double kDwellSlack = 1e-9;
    const double remaining = cap - state_.dwell_clock[z];
    ev.dwell_credit = remaining > kDwellSlack ? std::min(remaining, dt) : 0.0;
    state_.dwell_clock[z] = remaining - ev.dwell_credit < kDwellSlack ? cap : state_.dwell_clock[z] + ev.dwell_credit;
  }
  if (target >= 0) {
    const Vec2 c = plan_.zones[static_cast<std::size_t>(target)].center;
    ev.moved_closer_to_target = distance(state_.position, c) < distance(before, c);
  }
  ev.wall_contact = wall_contact(plan_, state_.position);

  const bool finished_circuit =
      state_.visited_count() == kZoneCount && state_.position.x > plan_.exit_x;
  state_.done = step_count_ >= max_steps_ || finished_circuit;

  result.observation = observe();
  result.done = state_.done;
  return result;
}

Observation CorridorEnv::observe() const { return env::observe(plan_, config_, state_); }

Trajectory run_episode(CorridorEnv& env, Controller& controller, std::uint64_t seed,
                       const std::function<void(const StepResult&)>& on_step) {
  env.reset(seed);
  controller.begin_episode(env, seed);
  Trajectory trajectory;
  trajectory.episode_id = env.episode_id();
  trajectory.samples.reserve(static_cast<std::size_t>(env.max_steps()) + 1);
  trajectory.samples.push_back({0.0, env.state().position, env.state().heading, 0});
  while (!env.state().done) {
    const Action action = controller.act(env);
    const StepResult result = env.step(action);
    trajectory.samples.push_back(
        {env.state().time, env.state().position, env.state().heading, action.idle_state});
    if (on_step) on_step(result);
  }
  return trajectory;
}

}  // namespace audamp::env
