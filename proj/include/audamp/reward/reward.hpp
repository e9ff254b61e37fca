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

#include "audamp/env/corridor_env.hpp"

namespace audamp::reward {

/// Which entry reward a first entry pays: by the order zones were entered in
/// this episode (default) or by the physical zone index.
enum class EntryIndexing { kByOrder, kByZone };

struct RewardConfig {
  std::array<double, env::kZoneCount> entry_rewards{48.2, 63.7, 85.5};
  double completion_bonus = 41.0;
  double proximity_rate = 0.03;     // per second while closing on the target zone
  double wall_penalty_rate = 0.01;  // per second in wall contact, applied negatively
  double dwell_rate = 1.0;          // per second of credited dwell
  double dwell_cap = 17.0;          // seconds per zone
  EntryIndexing entry_indexing = EntryIndexing::kByOrder;

  bool operator==(const RewardConfig&) const = default;
};

/// Per-component reward sums. `penalty` is stored with its negative sign.
struct RewardComponents {
  double entry = 0.0;
  double completion = 0.0;
  double dwell = 0.0;
  double shaping = 0.0;
  double penalty = 0.0;

  double total() const { return entry + completion + dwell + shaping + penalty; }
  RewardComponents& operator+=(const RewardComponents& other);
};

struct RewardLedger {
  std::int64_t episode_id = 0;
  int entries_made = 0;
  std::array<double, env::kZoneCount> dwell_credited{};
  double cumulative_reward = 0.0;
  RewardComponents totals;

  static RewardLedger for_episode(std::int64_t episode_id);
};

struct StepReward {
  double reward = 0.0;
  RewardComponents components;
  RewardLedger ledger;
};

/// Reward for one step plus the updated ledger. Throws Error when the events
/// belong to a different episode than the ledger.
StepReward step_reward(const env::StepEvents& events, const RewardLedger& ledger,
                       const RewardConfig& config);

/// Largest episodic reward excluding shaping: all entry rewards, the
/// completion bonus, and a full dwell on every zone.
double fixed_component_max(const RewardConfig& config);

/// Recomputes every component from raw positions alone. Throws Error on
/// non-uniform timestamps.
RewardComponents replay_rewards(const env::Trajectory& trajectory, const env::FloorPlan& plan,
                                const RewardConfig& config);

}  // namespace audamp::reward
