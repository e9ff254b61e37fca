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

#include "audamp/eval/motion.hpp"

#include <cmath>

#include <fmt/format.h>

#include "audamp/common/geometry.hpp"

namespace audamp::eval {

std::string to_string(const MotionLabel& label) {
  switch (label.kind) {
    case MotionKind::kWalking:
      return "walking";
    case MotionKind::kTurning:
      return "turning";
    case MotionKind::kIdle:
      break;
  }
  return fmt::format("idle-{}", label.idle_state);
}

MotionLabel classify_motion(double speed, double turn_rate, int idle_state, const MotionThresholds& thresholds) {
  if (speed >= thresholds.walk_speed) return {MotionKind::kWalking, 0};
  if (std::abs(turn_rate) >= thresholds.turn_rate) return {MotionKind::kTurning, 0};
  return {MotionKind::kIdle, idle_state};
}

std::vector<MotionLabel> label_motion_states(const env::Trajectory& trajectory, const MotionThresholds& thresholds) {
  const double dt = env::uniform_interval(trajectory);
  std::vector<MotionLabel> labels;
  labels.reserve(trajectory.samples.size() - 1);
  for (std::size_t k = 1; k < trajectory.samples.size(); ++k) {
    const auto& a = trajectory.samples[k - 1];
    const auto& b = trajectory.samples[k];
    labels.push_back(classify_motion(distance(a.position, b.position) / dt, wrap_angle(b.heading - a.heading) / dt,
                                     b.idle_state, thresholds));
  }
  return labels;
}

MotionProfile motion_profile(std::span<const MotionLabel> labels) {
  MotionProfile p;
  p.steps = labels.size();
  if (labels.empty()) return p;
  std::size_t walking = 0, turning = 0;
  std::array<std::size_t, 4> idle{};
  for (const auto& label : labels) {
    if (label.kind == MotionKind::kWalking) {
      ++walking;
    } else if (label.kind == MotionKind::kTurning) {
      ++turning;
    } else {
      ++idle[static_cast<std::size_t>(label.idle_state) % idle.size()];
    }
  }
  const double n = static_cast<double>(labels.size());
  p.walking = static_cast<double>(walking) / n;
  p.turning = static_cast<double>(turning) / n;
  std::size_t idle_total = 0;
  for (std::size_t k = 0; k < idle.size(); ++k) {
    p.idle_substates[k] = static_cast<double>(idle[k]) / n;
    idle_total += idle[k];
  }
  p.idle = static_cast<double>(idle_total) / n;
  return p;
}

MotionProfile motion_profile(std::span<const env::Trajectory> trajectories, const MotionThresholds& thresholds) {
  std::vector<MotionLabel> all;
  for (const auto& traj : trajectories) {
    if (traj.samples.size() < 2) continue;
    auto labels = label_motion_states(traj, thresholds);
    all.insert(all.end(), labels.begin(), labels.end());
  }
  return motion_profile(all);
}

}  // namespace audamp::eval
