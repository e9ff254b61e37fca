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

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>

#include "audamp/common/rng.hpp"
#include "audamp/env/floor_plan.hpp"
#include "audamp/env/trajectory.hpp"

namespace audamp::env {

inline constexpr int kObservationSize = 16;
inline constexpr int kIdleStateCount = 4;

using Observation = std::array<double, kObservationSize>;

// Observation layout.
inline constexpr int kObsPosition = 0;      // 2: position scaled to [-1, 1]
inline constexpr int kObsHeading = 2;       // 2: cos, sin
inline constexpr int kObsZoneOffsets = 4;   // 6: per-zone offset in agent frame / length
inline constexpr int kObsVisited = 10;      // 3: first-entry flags
inline constexpr int kObsWallDistance = 13; // 2: distance to y = 0 and y = width, / width
inline constexpr int kObsTime = 15;         // 1: time / horizon

struct Action {
  double speed = 0.0;      // m/s
  double turn_rate = 0.0;  // rad/s
  int idle_state = 0;

  bool operator==(const Action&) const = default;
};

struct AgentState {
  Vec2 position;
  double heading = 0.0;
  double time = 0.0;
  std::array<bool, kZoneCount> visited{};
  std::array<double, kZoneCount> dwell_clock{};
  bool done = false;

  int visited_count() const;
};

/// Everything the reward system needs to know about one step.
struct StepEvents {
  std::int64_t episode_id = 0;
  std::optional<int> entered_zone_first_time;
  std::optional<int> inside_zone;
  double dwell_credit = 0.0;
  bool moved_closer_to_target = false;
  bool wall_contact = false;
  bool all_zones_just_completed = false;
  double dt = 0.0;
};

struct StepResult {
  Observation observation{};
  StepEvents events;
  bool done = false;
};

/// Clamps the continuous components into [0, v_max] x [-omega_max, omega_max].
/// Throws std::invalid_argument for an idle state outside {0..3}.
Action clamp_action(const Action& action, const EnvConfig& config);

/// Index of the unvisited zone nearest to `position`, or -1 if all are visited.
int nearest_unvisited_zone(const FloorPlan& plan, const std::array<bool, kZoneCount>& visited,
                           Vec2 position);

/// Builds the 16-entry observation for an arbitrary state.
Observation observe(const FloorPlan& plan, const EnvConfig& config, const AgentState& state);

/// Single-agent corridor simulation. Not thread-safe; use one instance per
/// worker.
class CorridorEnv {
 public:
  explicit CorridorEnv(const EnvConfig& config = {});

  Observation reset(std::uint64_t seed);
  /// Places the agent at an explicit pose (tests, scripted replays).
  Observation reset_to(Vec2 position, double heading);
  StepResult step(const Action& action);
  Observation observe() const;

  const FloorPlan& plan() const { return plan_; }
  const EnvConfig& config() const { return config_; }
  const AgentState& state() const { return state_; }
  std::int64_t episode_id() const { return episode_id_; }
  std::int64_t step_count() const { return step_count_; }
  std::int64_t max_steps() const { return max_steps_; }

 private:
  void begin_episode(Vec2 position, double heading);

  EnvConfig config_;
  FloorPlan plan_;
  AgentState state_;
  std::int64_t episode_id_ = -1;
  std::int64_t step_count_ = 0;
  std::int64_t max_steps_ = 0;
  bool started_ = false;
};

/// Decision-maker driving a CorridorEnv one step at a time.
class Controller {
 public:
  virtual ~Controller() = default;
  virtual void begin_episode(const CorridorEnv& env, std::uint64_t seed) = 0;
  virtual Action act(const CorridorEnv& env) = 0;
};

/// Resets `env` with `seed`, runs `controller` until done, and returns the
/// recorded trajectory. `on_step` sees every step result.
Trajectory run_episode(CorridorEnv& env, Controller& controller, std::uint64_t seed,
                       const std::function<void(const StepResult&)>& on_step = {});

}  // namespace audamp::env
