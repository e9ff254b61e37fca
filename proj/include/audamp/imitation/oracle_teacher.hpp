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

#include <cstdint>

#include "audamp/common/rng.hpp"
#include "audamp/env/corridor_env.hpp"

namespace audamp::imitation {

struct OracleOptions {
  double waypoint_jitter = 0.8;  // m, radius of the jitter disc around each target
  double min_speed = 0.8;        // m/s, per-episode walking speed range
  double max_speed = 1.4;
  double max_extra_dwell = 3.0;  // s beyond the performance duration
  double arrive_radius = 0.15;   // m
  double steering_gain = 3.0;    // 1/s, turn rate per radian of heading error
  double turn_in_place_error = 0.6;  // rad; larger errors stop the agent to turn
};

/// Scripted teacher: visits zones nearest-unvisited first, faces the zone
/// center, watches the full performance in idle state 1 + zone index, and then
/// walks out through the exit. Walking and turning away use idle state 0.
class OracleTeacher : public env::Controller {
 public:
  explicit OracleTeacher(OracleOptions options = {}) : options_(options) {}

  void begin_episode(const env::CorridorEnv& env, std::uint64_t seed) override;
  env::Action act(const env::CorridorEnv& env) override;

 private:
  enum class Phase { kSelectTarget, kWalk, kFace, kDwell, kExit };

  void select_target(const env::CorridorEnv& env);

  OracleOptions options_;
  Rng rng_;
  Phase phase_ = Phase::kSelectTarget;
  std::array<bool, env::kZoneCount> watched_{};
  int target_ = -1;
  Vec2 waypoint_;
  double speed_ = 1.0;
  double required_dwell_ = 0.0;
  double entered_at_ = -1.0;
};

}  // namespace audamp::imitation
