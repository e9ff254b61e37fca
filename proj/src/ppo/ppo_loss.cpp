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

#include "audamp/ppo/ppo_loss.hpp"

#include <algorithm>
#include <cmath>

#include "audamp/common/error.hpp"

namespace audamp::ppo {

using policy::HeadLossValue;
using policy::HeadOutputs;
using policy::Matrix;

double clipped_surrogate(double ratio, double advantage, double clip_epsilon) {
  const double clipped = std::clamp(ratio, 1.0 - clip_epsilon, 1.0 + clip_epsilon);
  return -std::min(ratio * advantage, clipped * advantage);
}

policy::HeadLoss ppo_head_loss(const PpoMinibatch& batch, const PpoLossConfig& config, PpoLossStats* stats) {
  if (batch.size() == 0) throw Error("ppo_loss: empty minibatch");
  return [&batch, config, stats](const HeadOutputs& heads) {
    const auto n = static_cast<Eigen::Index>(batch.size());
    const double inv_n = 1.0 / static_cast<double>(n);
    const int cdim = policy::kContinuousDim;
    HeadLossValue out;
    auto& g = out.grad;
    g.mean = Matrix::Zero(n, cdim);
    g.logits = Matrix::Zero(n, policy::kDiscreteDim);
    g.value = policy::Vector::Zero(n);
    g.log_std = policy::Vector::Zero(cdim);

    std::array<double, policy::kContinuousDim> inv_var{};
    double gaussian_entropy = 0.0;
    for (int d = 0; d < cdim; ++d) {
      inv_var[static_cast<std::size_t>(d)] = std::exp(-2.0 * heads.log_std[d]);
      gaussian_entropy += policy::gaussian_entropy(heads.log_std[d]);
    }

    PpoLossStats s;
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      const auto& raw = batch.raw_actions[ii];
      std::array<double, policy::kDiscreteDim> logits{};
      for (int k = 0; k < policy::kDiscreteDim; ++k) logits[static_cast<std::size_t>(k)] = heads.logits(i, k);
      const auto logp_cat = policy::log_softmax(logits);
      const auto p = policy::softmax(logits);
      const double cat_entropy = policy::categorical_entropy(p);
      const int idle = batch.idle_states[ii];

      double log_prob = logp_cat[static_cast<std::size_t>(idle)];
      for (int d = 0; d < cdim; ++d) {
        log_prob += policy::gaussian_log_density(raw[static_cast<std::size_t>(d)], heads.mean(i, d), heads.log_std[d]);
      }
      const double ratio = std::exp(log_prob - batch.old_log_probs[ii]);
      const double adv = batch.advantages[ii];
      const double unclipped = ratio * adv;
      const double clipped = std::clamp(ratio, 1.0 - config.clip_epsilon, 1.0 + config.clip_epsilon) * adv;
      s.policy -= std::min(unclipped, clipped);
      if (clipped < unclipped) s.clip_fraction += 1.0;
      // d(policy term)/d(log_prob); zero when the clipped branch is active.
      const double dlogp = unclipped <= clipped ? -ratio * adv * inv_n : 0.0;

      for (int d = 0; d < cdim; ++d) {
        const double diff = raw[static_cast<std::size_t>(d)] - heads.mean(i, d);
        const double z2 = diff * diff * inv_var[static_cast<std::size_t>(d)];
        g.mean(i, d) = dlogp * diff * inv_var[static_cast<std::size_t>(d)];
        g.log_std[d] += dlogp * (z2 - 1.0);
      }
      for (int k = 0; k < policy::kDiscreteDim; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        const double onehot = k == idle ? 1.0 : 0.0;
        g.logits(i, k) = dlogp * (onehot - p[kk]) +
                         config.entropy_coef * inv_n * p[kk] * (logp_cat[kk] + cat_entropy);
      }

      const double verr = heads.value[i] - batch.returns[ii];
      s.value += verr * verr;
      g.value[i] = 2.0 * config.value_coef * verr * inv_n;
      s.entropy += gaussian_entropy + cat_entropy;
    }
    for (int d = 0; d < cdim; ++d) g.log_std[d] -= config.entropy_coef;

    s.policy *= inv_n;
    s.value *= inv_n;
    s.entropy *= inv_n;
    s.clip_fraction *= inv_n;
    s.total = s.policy + config.value_coef * s.value - config.entropy_coef * s.entropy;
    if (stats != nullptr) *stats = s;
    out.loss = s.total;
    return out;
  };
}

PpoLossStats ppo_loss(const policy::PolicyParams& params, const PpoMinibatch& batch, const PpoLossConfig& config) {
  PpoLossStats stats;
  policy::loss_value(params, batch.observations, ppo_head_loss(batch, config, &stats));
  return stats;
}

}  // namespace audamp::ppo
