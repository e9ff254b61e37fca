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

#include "audamp/policy/distributions.hpp"

#include <algorithm>
#include <cmath>

namespace audamp::policy {

std::array<double, kDiscreteDim> log_softmax(std::span<const double> logits) {
  const double peak = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z - peak);
  const double log_norm = peak + std::log(sum);
  std::array<double, kDiscreteDim> out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = logits[i] - log_norm;
  return out;
}

std::array<double, kDiscreteDim> softmax(std::span<const double> logits) {
  auto out = log_softmax(logits);
  for (double& v : out) v = std::exp(v);
  return out;
}

double categorical_entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double gaussian_log_density(double x, double mean, double log_std) {
  const double z = (x - mean) * std::exp(-log_std);
  return -0.5 * z * z - log_std - kHalfLogTwoPi;
}

double gaussian_entropy(double log_std) { return 0.5 + kHalfLogTwoPi + log_std; }

ActionDistribution distribution_row(const HeadOutputs& heads, Eigen::Index row) {
  ActionDistribution dist;
  for (int d = 0; d < kContinuousDim; ++d) {
    dist.mean[static_cast<std::size_t>(d)] = heads.mean(row, d);
    dist.std[static_cast<std::size_t>(d)] = std::exp(heads.log_std[d]);
  }
  std::array<double, kDiscreteDim> logits{};
  for (int k = 0; k < kDiscreteDim; ++k) logits[static_cast<std::size_t>(k)] = heads.logits(row, k);
  dist.probs = softmax(logits);
  dist.value = heads.value[row];
  return dist;
}

ActionDistribution forward(const PolicyParams& params, const env::Observation& observation) {
  const Matrix batch = observation_matrix(std::span(&observation, 1));
  return distribution_row(forward_batch(params, batch), 0);
}

SampledAction sample(const ActionDistribution& dist, const ActionLimits& limits, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SampledAction out;
  for (std::size_t d = 0; d < kContinuousDim; ++d) {
    out.raw[d] = dist.mean[d] + dist.std[d] * normal(rng);
    out.log_prob += gaussian_log_density(out.raw[d], dist.mean[d], std::log(dist.std[d]));
  }
  const double u = unit(rng);
  double cumulative = 0.0;
  int idle = kDiscreteDim - 1;
  for (int k = 0; k < kDiscreteDim; ++k) {
    cumulative += dist.probs[static_cast<std::size_t>(k)];
    if (u < cumulative) {
      idle = k;
      break;
    }
  }
  // Guard against the rounding tail of the cumulative sum landing on p = 0.
  while (dist.probs[static_cast<std::size_t>(idle)] <= 0.0 && idle > 0) --idle;
  out.log_prob += std::log(dist.probs[static_cast<std::size_t>(idle)]);
  out.action.speed = std::clamp(out.raw[0], 0.0, limits.v_max);
  out.action.turn_rate = std::clamp(out.raw[1], -limits.omega_max, limits.omega_max);
  out.action.idle_state = idle;
  return out;
}

env::Action mode_action(const ActionDistribution& dist, const ActionLimits& limits) {
  env::Action action;
  action.speed = std::clamp(dist.mean[0], 0.0, limits.v_max);
  action.turn_rate = std::clamp(dist.mean[1], -limits.omega_max, limits.omega_max);
  action.idle_state =
      static_cast<int>(std::max_element(dist.probs.begin(), dist.probs.end()) - dist.probs.begin());
  return action;
}

LogProbEntropy log_prob_and_entropy(const PolicyParams& params, const env::Observation& observation,
                                    std::span<const double> raw_continuous, int idle_state) {
  const Matrix batch = observation_matrix(std::span(&observation, 1));
  const HeadOutputs heads = forward_batch(params, batch);
  std::array<double, kDiscreteDim> logits{};
  for (int k = 0; k < kDiscreteDim; ++k) logits[static_cast<std::size_t>(k)] = heads.logits(0, k);
  const auto log_probs = log_softmax(logits);
  const auto probs = softmax(logits);

  LogProbEntropy out;
  for (int d = 0; d < kContinuousDim; ++d) {
    out.log_prob += gaussian_log_density(raw_continuous[static_cast<std::size_t>(d)], heads.mean(0, d),
                                         heads.log_std[d]);
    out.entropy += gaussian_entropy(heads.log_std[d]);
  }
  out.log_prob += log_probs.at(static_cast<std::size_t>(idle_state));
  out.entropy += categorical_entropy(probs);
  out.value = heads.value[0];
  return out;
}

}  // namespace audamp::policy
