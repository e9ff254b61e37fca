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
#include <vector>

#include "audamp/common/rng.hpp"
#include "audamp/env/corridor_env.hpp"
#include "audamp/policy/distributions.hpp"
#include "audamp/policy/policy_net.hpp"
#include "audamp/reward/reward.hpp"

namespace audamp::ppo {

/// Transitions of one collection round, stored env-major: index = env * horizon + step.
struct RolloutBatch {
  int n_envs = 0;
  int horizon = 0;
  std::vector<env::Observation> observations;
  std::vector<std::array<double, policy::kContinuousDim>> raw_actions;  // pre-clamp samples
  std::vector<int> idle_states;
  std::vector<double> log_probs;  // behavior policy
  std::vector<double> rewards;
  std::vector<double> values;
  std::vector<std::uint8_t> dones;
  std::vector<int> env_index;
  std::vector<int> step_index;
  std::vector<double> bootstrap_values;  // V(s_horizon) per env
  std::vector<double> advantages;
  std::vector<double> returns;

  std::size_t size() const { return rewards.size(); }
};

/// Summary of an episode that ended during collection.
struct EpisodeSummary {
  int env_index = 0;
  double cumulative_reward = 0.0;
  bool completed_all_zones = false;
  std::int64_t steps = 0;
};

/// A fixed set of independently seeded environments sharing one policy.
/// Environment i resets its k-th episode with derive_seed(seed, i, k) and
/// samples actions from its own RNG stream.
class VecEnv {
 public:
  VecEnv(const env::EnvConfig& env_config, const reward::RewardConfig& reward_config, int n_envs,
         std::uint64_t seed);

  int size() const { return static_cast<int>(envs_.size()); }
  const env::CorridorEnv& env(int i) const { return envs_[static_cast<std::size_t>(i)]; }
  const reward::RewardLedger& ledger(int i) const { return ledgers_[static_cast<std::size_t>(i)]; }

  /// Episodes finished since the last call, in completion order.
  std::vector<EpisodeSummary> drain_finished();

 private:
  friend RolloutBatch collect_rollouts(const policy::PolicyParams&, VecEnv&, int);

  void reset_env(std::size_t i);

  reward::RewardConfig reward_config_;
  std::uint64_t seed_;
  std::vector<env::CorridorEnv> envs_;
  std::vector<reward::RewardLedger> ledgers_;
  std::vector<Rng> rngs_;
  std::vector<std::uint64_t> episode_counts_;
  std::vector<env::Observation> current_;
  std::vector<EpisodeSummary> finished_;
};

/// Advances every environment `horizon` steps under `params`, auto-resetting
/// finished episodes. Advantages/returns are left empty (see compute_gae).
RolloutBatch collect_rollouts(const policy::PolicyParams& params, VecEnv& envs, int horizon);

}  // namespace audamp::ppo
