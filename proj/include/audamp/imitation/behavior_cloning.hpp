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
#include <span>
#include <vector>

#include "audamp/imitation/demo_dataset.hpp"
#include "audamp/policy/distributions.hpp"
#include "audamp/policy/policy_net.hpp"

namespace audamp::imitation {

struct BcConfig {
  int epochs = 20;
  int batch_size = 256;
  double lr = 1e-3;
  double holdout_fraction = 0.2;
  double entropy_beta = 0.0;
  // After training, set log_std to the log RMS residual of the continuous
  // mean on the training split (the Gaussian maximum-likelihood scale).
  bool fit_log_std = true;
  std::uint64_t seed = 0;

  bool operator==(const BcConfig&) const = default;
};

/// Statistics after `epoch` passes over the training split (epoch 0 is the
/// untrained network).
struct BcEpochStats {
  int epoch = 0;
  double train_loss = 0.0;
  double heldout_loss = 0.0;
  double heldout_mse = 0.0;            // mean range-normalized continuous squared error
  double heldout_idle_accuracy = 0.0;  // argmax idle head vs demo idle state
};

struct BcResult {
  policy::PolicyParams params;
  std::vector<BcEpochStats> curve;
};

/// Mean over the batch of: range-normalized squared error of the continuous
/// mean, cross-entropy of the idle head, minus beta times idle-head entropy.
/// Continuous errors are divided by (range / 2)^2 per dimension.
policy::HeadLoss bc_head_loss(std::span<const LabeledTransition> batch, const policy::ActionLimits& limits,
                              double entropy_beta = 0.0);

double bc_loss(const policy::PolicyParams& params, std::span<const LabeledTransition> batch,
               const policy::ActionLimits& limits, double entropy_beta = 0.0);

policy::Matrix observations_of(std::span<const LabeledTransition> batch);

/// Seeded episode-level train/held-out split: returns (train, heldout).
std::pair<std::vector<LabeledTransition>, std::vector<LabeledTransition>> split_transitions(
    const DemoDataset& demos, const env::EnvConfig& env_config, double holdout_fraction, std::uint64_t seed);

/// Per-dimension RMS of (action - network mean) over `data`, raw action units.
std::array<double, 2> residual_rms(const policy::PolicyParams& params, std::span<const LabeledTransition> data);

/// Mini-batch Adam on bc_loss over the training split. With 0 epochs the
/// parameters are returned unchanged.
BcResult bc_train(const policy::PolicyParams& initial, const DemoDataset& demos,
                  const env::EnvConfig& env_config, const BcConfig& config);

}  // namespace audamp::imitation
