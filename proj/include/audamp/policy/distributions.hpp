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
#include <numbers>
#include <span>

#include "audamp/common/rng.hpp"
#include "audamp/env/corridor_env.hpp"
#include "audamp/policy/policy_net.hpp"

namespace audamp::policy {

inline constexpr int kContinuousDim = 2;
inline constexpr int kDiscreteDim = env::kIdleStateCount;
inline const double kHalfLogTwoPi = 0.5 * std::log(2.0 * std::numbers::pi);

/// Execution ranges for the continuous action components.
struct ActionLimits {
  double v_max = 1.5;
  double omega_max = 2.0;

  static ActionLimits from(const env::EnvConfig& config) { return {config.v_max, config.omega_max}; }
};

/// Policy output for one observation.
struct ActionDistribution {
  std::array<double, kContinuousDim> mean{};
  std::array<double, kContinuousDim> std{};
  std::array<double, kDiscreteDim> probs{};
  double value = 0.0;
};

/// A sampled action: `raw` is the unclamped Gaussian draw that `log_prob`
/// refers to; `action` is what the environment executes.
struct SampledAction {
  env::Action action;
  std::array<double, kContinuousDim> raw{};
  double log_prob = 0.0;
};

struct LogProbEntropy {
  double log_prob = 0.0;
  double entropy = 0.0;
  double value = 0.0;
};

std::array<double, kDiscreteDim> softmax(std::span<const double> logits);
std::array<double, kDiscreteDim> log_softmax(std::span<const double> logits);
double categorical_entropy(std::span<const double> probs);
double gaussian_log_density(double x, double mean, double log_std);
/// Differential entropy of a 1-D Gaussian: 0.5 ln(2 pi e) + log_std.
double gaussian_entropy(double log_std);

ActionDistribution forward(const PolicyParams& params, const env::Observation& observation);

/// Row `row` of a batched forward pass as a distribution.
ActionDistribution distribution_row(const HeadOutputs& heads, Eigen::Index row);

SampledAction sample(const ActionDistribution& dist, const ActionLimits& limits, Rng& rng);

/// Deterministic evaluation action: clamped mean and most probable idle state
/// (lowest index on ties).
env::Action mode_action(const ActionDistribution& dist, const ActionLimits& limits);

/// Joint log-probability of (raw continuous, idle), total entropy and value.
LogProbEntropy log_prob_and_entropy(const PolicyParams& params, const env::Observation& observation,
                                    std::span<const double> raw_continuous, int idle_state);

}  // namespace audamp::policy
