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
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "audamp/env/floor_plan.hpp"
#include "audamp/imitation/behavior_cloning.hpp"
#include "audamp/imitation/demo_dataset.hpp"
#include "audamp/policy/policy_net.hpp"
#include "audamp/reward/reward.hpp"

namespace audamp::ppo {

struct TrainConfig {
  std::int64_t total_steps = 200'000;  // environment steps
  int n_envs = 18;
  int horizon = 2048;  // steps per env per iteration
  int epochs = 3;
  int minibatch_size = 512;
  double gamma = 0.99;
  double lambda = 0.95;
  double clip_epsilon = 0.2;
  double value_coef = 0.5;
  double entropy_coef = 0.005;
  double lr = 3e-4;  // decays linearly to 0 over the run
  double max_grad_norm = 0.5;  // global L2 clip; <= 0 disables
  double bc_regularizer = 0.0;
  bool bc_pretrain = true;
  int checkpoint_interval = 0;  // iterations between snapshot_<id>_iter<k>.ckpt files; 0 = final only
  std::uint64_t seed = 0;

  /// Throws ConfigError naming the offending key.
  void validate() const;
  int iterations() const;

  bool operator==(const TrainConfig&) const = default;
};

struct CurveRow {
  int iteration = 0;
  std::int64_t env_steps = 0;
  double mean_reward = 0.0;
  double completion_rate = 0.0;
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
};

struct TrainResult {
  policy::PolicyParams params;
  std::vector<imitation::BcEpochStats> bc_curve;
  std::vector<CurveRow> curve;
  std::vector<std::filesystem::path> checkpoints;
  std::int64_t env_steps = 0;
};

struct TrainOutputs {
  std::filesystem::path checkpoint_dir;  // empty: no files written
  int model_id = 0;
};

/// Parameters after (optional) behavioral-cloning pretraining.
struct Pretrained {
  policy::PolicyParams params;
  std::vector<imitation::BcEpochStats> bc_curve;
};

/// Seeded initialization followed by BC on `demos` when config.bc_pretrain.
Pretrained pretrain(const TrainConfig& config, const env::EnvConfig& env_config,
                    const imitation::BcConfig& bc_config, const imitation::DemoDataset* demos,
                    const policy::InitOptions& init = {});

/// PPO from `start` over total_steps environment steps; rollout and minibatch
/// streams derive from config.seed. `demos` is only read when
/// config.bc_regularizer > 0.
TrainResult fine_tune(const TrainConfig& config, const env::EnvConfig& env_config,
                      const reward::RewardConfig& reward_config, const Pretrained& start,
                      const imitation::DemoDataset* demos, const TrainOutputs& outputs = {});

/// Behavioral-cloning pretraining (when enabled and demos are given) followed
/// by PPO over total_steps environment steps. Bit-reproducible for a fixed
/// configuration. A non-finite loss writes `diagnostic_<id>.ckpt` (when a
/// checkpoint directory is set) and rethrows.
TrainResult train(const TrainConfig& config, const env::EnvConfig& env_config,
                  const reward::RewardConfig& reward_config, const imitation::BcConfig& bc_config,
                  const imitation::DemoDataset* demos, const policy::InitOptions& init = {},
                  const TrainOutputs& outputs = {});

/// PPO seed of candidate `model_id` in a pool trained from `seed`.
std::uint64_t candidate_seed(std::uint64_t seed, int model_id);

/// Candidate pool: one shared pretraining pass, then independent PPO runs
/// with seeds candidate_seed(config.seed, id). Writes candidate_<id>.ckpt
/// files when checkpoint_dir is non-empty.
std::vector<TrainResult> train_candidates(const TrainConfig& config, const env::EnvConfig& env_config,
                                          const reward::RewardConfig& reward_config,
                                          const imitation::BcConfig& bc_config,
                                          const imitation::DemoDataset* demos, int n_candidates,
                                          const std::filesystem::path& checkpoint_dir = {},
                                          const policy::InitOptions& init = {});

/// Columns: iteration,env_steps,mean_reward,completion_rate,policy_loss,value_loss,entropy
void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& curve);

}  // namespace audamp::ppo
