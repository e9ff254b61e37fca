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
#include <span>
#include <string>
#include <vector>

#include "audamp/env/trajectory.hpp"

namespace audamp::eval {

enum class MotionKind { kWalking, kIdle, kTurning };

struct MotionLabel {
  MotionKind kind = MotionKind::kIdle;
  int idle_state = 0;  // meaningful for kIdle only

  bool operator==(const MotionLabel&) const = default;
};

struct MotionThresholds {
  double walk_speed = 0.1;  // m/s
  double turn_rate = 0.5;   // rad/s
};

/// "walking", "turning", or "idle-<k>".
std::string to_string(const MotionLabel& label);

/// Label for one step's speed, turn rate and idle state.
MotionLabel classify_motion(double speed, double turn_rate, int idle_state, const MotionThresholds& thresholds = {});

/// One label per step (samples.size() - 1 entries). Throws Error on
/// non-uniform timestamps.
std::vector<MotionLabel> label_motion_states(const env::Trajectory& trajectory,
                                             const MotionThresholds& thresholds = {});

/// Fractions of steps per kind; idle_substates splits the idle fraction.
struct MotionProfile {
  double walking = 0.0;
  double idle = 0.0;
  double turning = 0.0;
  std::array<double, 4> idle_substates{};
  std::size_t steps = 0;
};

MotionProfile motion_profile(std::span<const MotionLabel> labels);
MotionProfile motion_profile(std::span<const env::Trajectory> trajectories, const MotionThresholds& thresholds = {});

}  // namespace audamp::eval
