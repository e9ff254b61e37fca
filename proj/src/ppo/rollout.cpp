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

#include "audamp/ppo/rollout.hpp"

#include "audamp/common/error.hpp"

namespace audamp::ppo {

VecEnv::VecEnv(const env::EnvConfig& env_config, const reward::RewardConfig& reward_config, int n_envs,
               std::uint64_t seed)
    : reward_config_(reward_config), seed_(seed) {
  if (n_envs < 1) throw ConfigError("ppo.n_envs", "ppo.n_envs must be >= 1");
  const auto n = static_cast<std::size_t>(n_envs);
  envs_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    envs_.emplace_back(env_config);
    rngs_.emplace_back(derive_seed(seed, 0xac7, i));
  }
  ledgers_.resize(n);
  episode_counts_.assign(n, 0);
  current_.resize(n);
  for (std::size_t i = 0; i < n; ++i) reset_env(i);
}

void VecEnv::reset_env(std::size_t i) {
  current_[i] = envs_[i].reset(derive_seed(seed_, i, episode_counts_[i]));
  ++episode_counts_[i];
  ledgers_[i] = reward::RewardLedger::for_episode(envs_[i].episode_id());
}

std::vector<EpisodeSummary> VecEnv::drain_finished() { return std::exchange(finished_, {}); }

RolloutBatch collect_rollouts(const policy::PolicyParams& params, VecEnv& envs, int horizon) {
  if (horizon < 1) throw ConfigError("ppo.horizon", "ppo.horizon must be >= 1");
  const auto n = static_cast<std::size_t>(envs.size());
  const auto h = static_cast<std::size_t>(horizon);
  const std::size_t total = n * h;
  const policy::ActionLimits limits = policy::ActionLimits::from(envs.envs_.front().config());

  RolloutBatch batch;
  batch.n_envs = envs.size();
  batch.horizon = horizon;
  batch.observations.resize(total);
  batch.raw_actions.resize(total);
  batch.idle_states.resize(total);
  batch.log_probs.resize(total);
  batch.rewards.resize(total);
  batch.values.resize(total);
  batch.dones.resize(total);
  batch.env_index.resize(total);
  batch.step_index.resize(total);

  for (std::size_t t = 0; t < h; ++t) {
    const policy::HeadOutputs heads = policy::forward_batch(params, policy::observation_matrix(envs.current_));
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = i * h + t;
      const policy::ActionDistribution dist = policy::distribution_row(heads, static_cast<Eigen::Index>(i));
      const policy::SampledAction sampled = policy::sample(dist, limits, envs.rngs_[i]);
      const env::StepResult step = envs.envs_[i].step(sampled.action);
      const reward::StepReward r = reward::step_reward(step.events, envs.ledgers_[i], envs.reward_config_);
      envs.ledgers_[i] = r.ledger;

      batch.observations[k] = envs.current_[i];
      batch.raw_actions[k] = sampled.raw;
      batch.idle_states[k] = sampled.action.idle_state;
      batch.log_probs[k] = sampled.log_prob;
      batch.rewards[k] = r.reward;
      batch.values[k] = dist.value;
      batch.dones[k] = step.done ? 1 : 0;
      batch.env_index[k] = static_cast<int>(i);
      batch.step_index[k] = static_cast<int>(t);

      if (step.done) {
        envs.finished_.push_back({static_cast<int>(i), r.ledger.cumulative_reward,
                                  envs.envs_[i].state().visited_count() == env::kZoneCount,
                                  envs.envs_[i].step_count()});
        envs.reset_env(i);
      } else {
        envs.current_[i] = step.observation;
      }
    }
  }
  const policy::HeadOutputs tail = policy::forward_batch(params, policy::observation_matrix(envs.current_));
  batch.bootstrap_values.assign(tail.value.data(), tail.value.data() + tail.value.size());
  return batch;
}

}  // namespace audamp::ppo
