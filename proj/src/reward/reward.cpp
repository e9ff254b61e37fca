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

#include "audamp/reward/reward.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "audamp/common/error.hpp"

namespace audamp::reward {

RewardComponents& RewardComponents::operator+=(const RewardComponents& other) {
  entry += other.entry;
  completion += other.completion;
  dwell += other.dwell;
  shaping += other.shaping;
  penalty += other.penalty;
  return *this;
}

RewardLedger RewardLedger::for_episode(std::int64_t episode_id) {
  RewardLedger ledger;
  ledger.episode_id = episode_id;
  return ledger;
}

StepReward step_reward(const env::StepEvents& events, const RewardLedger& ledger,
                       const RewardConfig& config) {
  if (events.episode_id != ledger.episode_id) {
    throw Error(fmt::format("events from episode {} applied to ledger of episode {}",
                            events.episode_id, ledger.episode_id));
  }
  StepReward out;
  out.ledger = ledger;
  RewardComponents& c = out.components;

  if (events.entered_zone_first_time) {
    const int slot = config.entry_indexing == EntryIndexing::kByOrder
                         ? ledger.entries_made
                         : *events.entered_zone_first_time;
    c.entry = config.entry_rewards.at(static_cast<std::size_t>(slot));
    ++out.ledger.entries_made;
  }
  if (events.all_zones_just_completed) c.completion = config.completion_bonus;
  if (events.inside_zone && events.dwell_credit > 0.0) {
    const auto z = static_cast<std::size_t>(*events.inside_zone);
    const double credit =
        std::clamp(config.dwell_cap - ledger.dwell_credited[z], 0.0, events.dwell_credit);
    out.ledger.dwell_credited[z] += credit;
    c.dwell = config.dwell_rate * credit;
  }
  if (events.moved_closer_to_target) c.shaping = config.proximity_rate * events.dt;
  if (events.wall_contact) c.penalty = -config.wall_penalty_rate * events.dt;

  out.reward = c.total();
  out.ledger.totals += c;
  out.ledger.cumulative_reward += out.reward;
  return out;
}

double fixed_component_max(const RewardConfig& config) {
  const double entries =
      std::accumulate(config.entry_rewards.begin(), config.entry_rewards.end(), 0.0);
  return entries + config.completion_bonus +
         static_cast<double>(env::kZoneCount) * config.dwell_rate * config.dwell_cap;
}

RewardComponents replay_rewards(const env::Trajectory& trajectory, const env::FloorPlan& plan,
                                const RewardConfig& config) {
  RewardComponents totals;
  if (trajectory.samples.size() < 2) return totals;
  const double dt = env::uniform_interval(trajectory);

  std::array<bool, env::kZoneCount> seen{};
  std::array<double, env::kZoneCount> inside_time{};
  int entries = 0;

  for (std::size_t k = 1; k < trajectory.samples.size(); ++k) {
    const Vec2 from = trajectory.samples[k - 1].position;
    const Vec2 to = trajectory.samples[k].position;

    // Closing distance is judged against the target chosen before the move.
    int target = -1;
    double target_distance = 0.0;
    for (const auto& zone : plan.zones) {
      if (seen[static_cast<std::size_t>(zone.index)]) continue;
      const double d = distance(from, zone.center);
      if (target < 0 || d < target_distance) {
        target = zone.index;
        target_distance = d;
      }
    }
    if (target >= 0 &&
        distance(to, plan.zones[static_cast<std::size_t>(target)].center) < target_distance) {
      totals.shaping += config.proximity_rate * dt;
    }

    for (const auto& zone : plan.zones) {
      if (!env::zone_contains(zone, to)) continue;
      const auto z = static_cast<std::size_t>(zone.index);
      if (!seen[z]) {
        seen[z] = true;
        const std::size_t slot = config.entry_indexing == EntryIndexing::kByOrder
                                     ? static_cast<std::size_t>(entries)
                                     : z;
        totals.entry += config.entry_rewards[slot];
        ++entries;
        if (entries == env::kZoneCount) totals.completion += config.completion_bonus;
      }
      const double cap = std::min(config.dwell_cap, zone.performance_duration);
      const double credit = std::clamp(cap - inside_time[z], 0.0, dt);
      inside_time[z] += credit;
      totals.dwell += config.dwell_rate * credit;
    }

    if (plan.distance_to_nearest_wall(to) < plan.wall_margin) {
      totals.penalty -= config.wall_penalty_rate * dt;
    }
  }
  return totals;
}

}  // namespace audamp::reward
