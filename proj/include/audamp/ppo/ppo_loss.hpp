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
#include <vector>

#include "audamp/policy/distributions.hpp"
#include "audamp/policy/policy_net.hpp"

namespace audamp::ppo {

struct PpoLossConfig {
  double clip_epsilon = 0.2;
  double value_coef = 0.5;
  double entropy_coef = 0.005;
};

/// Training inputs for one minibatch; advantages are expected normalized.
struct PpoMinibatch {
  policy::Matrix observations;
  std::vector<std::array<double, policy::kContinuousDim>> raw_actions;
  std::vector<int> idle_states;
  std::vector<double> old_log_probs;
  std::vector<double> advantages;
  std::vector<double> returns;

  std::size_t size() const { return idle_states.size(); }
};

/// Means over the minibatch of each loss term.
struct PpoLossStats {
  double total = 0.0;
  double policy = 0.0;   // -min(rho A, clip(rho) A)
  double value = 0.0;    // (V - R)^2, before the coefficient
  double entropy = 0.0;  // joint Gaussian + categorical entropy
  double clip_fraction = 0.0;
};

/// Per-sample clipped surrogate -min(rho A, clamp(rho, 1-eps, 1+eps) A).
double clipped_surrogate(double ratio, double advantage, double clip_epsilon);

/// Loss over the heads: policy + value_coef * value - entropy_coef * entropy.
/// If `stats` is given it receives the term breakdown on every evaluation.
policy::HeadLoss ppo_head_loss(const PpoMinibatch& batch, const PpoLossConfig& config,
                               PpoLossStats* stats = nullptr);

PpoLossStats ppo_loss(const policy::PolicyParams& params, const PpoMinibatch& batch, const PpoLossConfig& config);

}  // namespace audamp::ppo
