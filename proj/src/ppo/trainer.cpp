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

#include "audamp/ppo/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "audamp/common/error.hpp"
#include "audamp/common/logging.hpp"
#include "audamp/common/rng.hpp"
#include "audamp/policy/adam.hpp"
#include "audamp/policy/checkpoint.hpp"
#include "audamp/ppo/gae.hpp"
#include "audamp/ppo/ppo_loss.hpp"
#include "audamp/ppo/rollout.hpp"

namespace audamp::ppo {

void TrainConfig::validate() const {
  auto fail = [](const char* key, const char* what) { throw ConfigError(key, fmt::format("{} {}", key, what)); };
  if (total_steps < 0) fail("ppo.total_steps", "must be >= 0");
  if (n_envs < 1) fail("ppo.n_envs", "must be >= 1");
  if (horizon < 1) fail("ppo.horizon", "must be >= 1");
  if (epochs < 1) fail("ppo.epochs", "must be >= 1");
  if (minibatch_size < 1) fail("ppo.minibatch_size", "must be >= 1");
  if ((static_cast<std::int64_t>(n_envs) * horizon) % minibatch_size != 0) {
    fail("ppo.minibatch_size", "must divide n_envs * horizon");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) fail("ppo.gamma", "must be in (0,1]");
  if (!(lambda >= 0.0 && lambda <= 1.0)) fail("ppo.lambda", "must be in [0,1]");
  if (!(clip_epsilon > 0.0 && clip_epsilon < 1.0)) fail("ppo.clip_epsilon", "must be in (0,1)");
  if (!(value_coef >= 0.0)) fail("ppo.value_coef", "must be >= 0");
  if (!(entropy_coef >= 0.0)) fail("ppo.entropy_coef", "must be >= 0");
  if (!(lr > 0.0)) fail("ppo.lr", "must be > 0");
  if (!(bc_regularizer >= 0.0)) fail("ppo.bc_regularizer", "must be >= 0");
  if (checkpoint_interval < 0) fail("ppo.checkpoint_interval", "must be >= 0");
}

int TrainConfig::iterations() const {
  const std::int64_t per_iteration = static_cast<std::int64_t>(n_envs) * horizon;
  return static_cast<int>((total_steps + per_iteration - 1) / per_iteration);
}

namespace {

PpoMinibatch gather(const RolloutBatch& batch, std::span<const std::size_t> indices) {
  PpoMinibatch mb;
  mb.observations.resize(static_cast<Eigen::Index>(indices.size()), env::kObservationSize);
  std::vector<double> raw_adv;
  raw_adv.reserve(indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const std::size_t k = indices[r];
    for (int j = 0; j < env::kObservationSize; ++j) {
      mb.observations(static_cast<Eigen::Index>(r), j) = batch.observations[k][static_cast<std::size_t>(j)];
    }
    mb.raw_actions.push_back(batch.raw_actions[k]);
    mb.idle_states.push_back(batch.idle_states[k]);
    mb.old_log_probs.push_back(batch.log_probs[k]);
    mb.returns.push_back(batch.returns[k]);
    raw_adv.push_back(batch.advantages[k]);
  }
  mb.advantages = normalize_advantages(raw_adv);
  return mb;
}

std::filesystem::path checkpoint_path(const TrainOutputs& outputs, const std::string& stem) {
  return outputs.checkpoint_dir / fmt::format("{}_{:02d}.ckpt", stem, outputs.model_id);
}

}  // namespace

Pretrained pretrain(const TrainConfig& config, const env::EnvConfig& env_config,
                    const imitation::BcConfig& bc_config, const imitation::DemoDataset* demos,
                    const policy::InitOptions& init) {
  config.validate();
  Pretrained out{policy::init_params(config.seed, policy::NetLayout{}, init), {}};
  if (config.bc_pretrain) {
    if (demos == nullptr || demos->episodes.empty()) throw Error("train: bc pretraining needs demonstrations");
    imitation::BcConfig bc = bc_config;
    bc.seed = derive_seed(config.seed, 0xbc0);
    auto bc_result = imitation::bc_train(out.params, *demos, env_config, bc);
    out.params = std::move(bc_result.params);
    out.bc_curve = std::move(bc_result.curve);
  }
  return out;
}

TrainResult fine_tune(const TrainConfig& config, const env::EnvConfig& env_config,
                      const reward::RewardConfig& reward_config, const Pretrained& start,
                      const imitation::DemoDataset* demos, const TrainOutputs& outputs) {
  config.validate();
  TrainResult result{start.params, start.bc_curve, {}, {}, 0};
  if (!outputs.checkpoint_dir.empty()) std::filesystem::create_directories(outputs.checkpoint_dir);

  std::vector<imitation::LabeledTransition> demo_transitions;
  if (config.bc_regularizer > 0.0) {
    if (demos == nullptr || demos->episodes.empty()) throw Error("train: bc_regularizer needs demonstrations");
    demo_transitions = imitation::labeled_transitions(*demos, env_config);
  }

  const policy::ActionLimits limits = policy::ActionLimits::from(env_config);
  const PpoLossConfig loss_config{config.clip_epsilon, config.value_coef, config.entropy_coef};
  VecEnv envs(env_config, reward_config, config.n_envs, derive_seed(config.seed, 0xe5));
  policy::AdamState adam(result.params.size());
  const int n_iterations = config.iterations();
  const std::size_t batch_size = static_cast<std::size_t>(config.n_envs) * static_cast<std::size_t>(config.horizon);
  const auto mb_size = static_cast<std::size_t>(config.minibatch_size);
  std::vector<std::size_t> order(batch_size);

  for (int it = 0; it < n_iterations; ++it) {
    const double lr = config.lr * (1.0 - static_cast<double>(it) / static_cast<double>(n_iterations));
    RolloutBatch batch = collect_rollouts(result.params, envs, config.horizon);
    compute_gae(batch, config.gamma, config.lambda);
    result.env_steps += static_cast<std::int64_t>(batch_size);

    CurveRow row;
    row.iteration = it;
    row.env_steps = result.env_steps;
    const auto finished = envs.drain_finished();
    if (!finished.empty()) {
      for (const auto& ep : finished) {
        row.mean_reward += ep.cumulative_reward;
        row.completion_rate += ep.completed_all_zones ? 1.0 : 0.0;
      }
      row.mean_reward /= static_cast<double>(finished.size());
      row.completion_rate /= static_cast<double>(finished.size());
    } else {
      // No episode ended this round: report the episodes in progress.
      for (int i = 0; i < envs.size(); ++i) {
        row.mean_reward += envs.ledger(i).cumulative_reward;
        row.completion_rate += envs.env(i).state().visited_count() == env::kZoneCount ? 1.0 : 0.0;
      }
      row.mean_reward /= envs.size();
      row.completion_rate /= envs.size();
    }

    int updates = 0;
    std::iota(order.begin(), order.end(), 0);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(it), static_cast<std::uint64_t>(epoch) + 1));
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t start = 0; start + mb_size <= batch_size; start += mb_size) {
        const PpoMinibatch mb = gather(batch, std::span(order).subspan(start, mb_size));
        PpoLossStats stats;
        policy::LossGradients lg;
        try {
          lg = policy::gradients(result.params, mb.observations, ppo_head_loss(mb, loss_config, &stats));
          if (config.bc_regularizer > 0.0) {
            std::vector<imitation::LabeledTransition> demo_batch;
            std::uniform_int_distribution<std::size_t> pick(0, demo_transitions.size() - 1);
            for (std::size_t j = 0; j < mb_size; ++j) demo_batch.push_back(demo_transitions[pick(rng)]);
            const auto bc = policy::gradients(result.params, imitation::observations_of(demo_batch),
                                              imitation::bc_head_loss(demo_batch, limits));
            auto g = lg.grads.values();
            const auto gb = bc.grads.values();
            for (std::size_t p = 0; p < g.size(); ++p) g[p] += config.bc_regularizer * gb[p];
          }
        } catch (const NumericalError& e) {
          if (!outputs.checkpoint_dir.empty()) {
            policy::save_checkpoint(checkpoint_path(outputs, "diagnostic"), result.params,
                                    {config.seed, result.env_steps, outputs.model_id});
          }
          throw NumericalError(fmt::format("iteration {} epoch {}: {}", it, epoch, e.what()));
        }
        policy::clip_global_norm(lg.grads, config.max_grad_norm);
        policy::optimizer_step(result.params, lg.grads, adam, lr);
        row.policy_loss += stats.policy;
        row.value_loss += stats.value;
        row.entropy += stats.entropy;
        ++updates;
      }
    }
    if (updates > 0) {
      row.policy_loss /= updates;
      row.value_loss /= updates;
      row.entropy /= updates;
    }
    result.curve.push_back(row);
    logger()->info("model {} iter {}/{} steps {} reward {:.2f} completion {:.2f} vloss {:.3f} entropy {:.3f}",
                   outputs.model_id, it + 1, n_iterations, row.env_steps, row.mean_reward, row.completion_rate,
                   row.value_loss, row.entropy);

    if (!outputs.checkpoint_dir.empty() && config.checkpoint_interval > 0 &&
        (it + 1) % config.checkpoint_interval == 0 && it + 1 < n_iterations) {
      const auto path = outputs.checkpoint_dir /
                        fmt::format("snapshot_{:02d}_iter{:04d}.ckpt", outputs.model_id, it + 1);
      policy::save_checkpoint(path, result.params, {config.seed, result.env_steps, outputs.model_id});
      result.checkpoints.push_back(path);
    }
  }

  if (!outputs.checkpoint_dir.empty()) {
    const auto path = checkpoint_path(outputs, "candidate");
    policy::save_checkpoint(path, result.params, {config.seed, result.env_steps, outputs.model_id});
    result.checkpoints.push_back(path);
  }
  return result;
}

TrainResult train(const TrainConfig& config, const env::EnvConfig& env_config,
                  const reward::RewardConfig& reward_config, const imitation::BcConfig& bc_config,
                  const imitation::DemoDataset* demos, const policy::InitOptions& init,
                  const TrainOutputs& outputs) {
  return fine_tune(config, env_config, reward_config, pretrain(config, env_config, bc_config, demos, init), demos,
                   outputs);
}

std::uint64_t candidate_seed(std::uint64_t seed, int model_id) {
  return derive_seed(seed, 0xca, static_cast<std::uint64_t>(model_id));
}

std::vector<TrainResult> train_candidates(const TrainConfig& config, const env::EnvConfig& env_config,
                                          const reward::RewardConfig& reward_config,
                                          const imitation::BcConfig& bc_config,
                                          const imitation::DemoDataset* demos, int n_candidates,
                                          const std::filesystem::path& checkpoint_dir,
                                          const policy::InitOptions& init) {
  if (n_candidates < 1) throw ConfigError("candidates", "candidates must be >= 1");
  const Pretrained start = pretrain(config, env_config, bc_config, demos, init);
  std::vector<TrainResult> results;
  results.reserve(static_cast<std::size_t>(n_candidates));
  for (int id = 0; id < n_candidates; ++id) {
    TrainConfig candidate = config;
    candidate.seed = candidate_seed(config.seed, id);
    results.push_back(fine_tune(candidate, env_config, reward_config, start, demos, {checkpoint_dir, id}));
  }
  return results;
}

void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& curve) {
  out << "iteration,env_steps,mean_reward,completion_rate,policy_loss,value_loss,entropy\n";
  for (const auto& r : curve) {
    out << fmt::format("{},{},{},{},{},{},{}\n", r.iteration, r.env_steps, r.mean_reward, r.completion_rate,
                       r.policy_loss, r.value_loss, r.entropy);
  }
}

}  // namespace audamp::ppo
