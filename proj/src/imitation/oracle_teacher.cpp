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

#include "audamp/imitation/oracle_teacher.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace audamp::imitation {

void OracleTeacher::begin_episode(const env::CorridorEnv& env, std::uint64_t seed) {
  rng_.seed(derive_seed(seed, 0x07ac1e));
  std::uniform_real_distribution<double> speed(options_.min_speed, options_.max_speed);
  speed_ = speed(rng_);
  watched_ = {};
  target_ = -1;
  entered_at_ = -1.0;
  phase_ = Phase::kSelectTarget;
  select_target(env);
}

void OracleTeacher::select_target(const env::CorridorEnv& env) {
  const env::FloorPlan& plan = env.plan();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double radius = options_.waypoint_jitter * std::sqrt(unit(rng_));
  const double angle = 2.0 * std::numbers::pi * unit(rng_);
  const Vec2 jitter{radius * std::cos(angle), radius * std::sin(angle)};

  target_ = env::nearest_unvisited_zone(plan, watched_, env.state().position);
  entered_at_ = -1.0;
  if (target_ >= 0) {
    const env::ContentZone& zone = plan.zones[static_cast<std::size_t>(target_)];
    // Arriving anywhere within arrive_radius of the viewing spot must be inside the square.
    const double reach = zone.half_side - options_.arrive_radius - 0.05;
    waypoint_ = zone.center + Vec2{std::clamp(jitter.x, -reach, reach), std::clamp(jitter.y, -reach, reach)};
    std::uniform_real_distribution<double> extra(0.0, options_.max_extra_dwell);
    required_dwell_ = zone.performance_duration + extra(rng_);
    phase_ = Phase::kWalk;
  } else {
    const double lane = plan.width / 2.0 + jitter.y;
    const double margin = plan.wall_margin + 0.5;
    waypoint_ = {std::min(plan.exit_x + 1.5, plan.length - margin),
                 std::clamp(lane, margin, plan.width - margin)};
    phase_ = Phase::kExit;
  }
}

env::Action OracleTeacher::act(const env::CorridorEnv& env) {
  const env::AgentState& state = env.state();
  const env::EnvConfig& cfg = env.config();
  const double dt = cfg.dt;
  auto turn_toward = [&](Vec2 point, double gain_rate) {
    const Vec2 d = point - state.position;
    const double err = wrap_angle(std::atan2(d.y, d.x) - state.heading);
    return std::pair{err, std::clamp(gain_rate * err, -cfg.omega_max, cfg.omega_max)};
  };

  if (phase_ == Phase::kWalk || phase_ == Phase::kFace || phase_ == Phase::kDwell) {
    const auto& zone = env.plan().zones[static_cast<std::size_t>(target_)];
    if (entered_at_ < 0.0 && env::zone_contains(zone, state.position)) entered_at_ = state.time;
  }

  if (phase_ == Phase::kWalk) {
    const double dist = distance(waypoint_, state.position);
    if (dist < options_.arrive_radius) {
      phase_ = Phase::kFace;
    } else {
      const auto [err, steer] = turn_toward(waypoint_, options_.steering_gain);
      if (std::abs(err) > options_.turn_in_place_error) {
        return {0.0, std::clamp(err / dt, -cfg.omega_max, cfg.omega_max), 0};
      }
      const double speed = std::min(speed_, dist / dt) * std::cos(err);
      return {speed, steer, 0};
    }
  }

  const int watching = 1 + target_;
  if (phase_ == Phase::kFace) {
    const auto& zone = env.plan().zones[static_cast<std::size_t>(target_)];
    if (distance(zone.center, state.position) > 0.3) {
      const auto [err, steer] = turn_toward(zone.center, 1.0 / dt);
      if (std::abs(err) > 0.05) return {0.0, steer, watching};
    }
    phase_ = Phase::kDwell;
  }

  if (phase_ == Phase::kDwell) {
    // The entering step already counts as one dt inside the zone.
    const double inside = state.time - entered_at_ + dt;
    if (entered_at_ < 0.0 || inside < required_dwell_ - 1e-9) return {0.0, 0.0, watching};
    watched_[static_cast<std::size_t>(target_)] = true;
    select_target(env);
    return act(env);
  }

  // kExit: head for the exit waypoint and keep walking past it.
  const auto [err, steer] = turn_toward(waypoint_, options_.steering_gain);
  if (std::abs(err) > options_.turn_in_place_error && distance(waypoint_, state.position) > 0.5) {
    return {0.0, std::clamp(err / dt, -cfg.omega_max, cfg.omega_max), 0};
  }
  return {speed_, std::abs(err) > std::numbers::pi / 2 ? 0.0 : steer, 0};
}

}  // namespace audamp::imitation
