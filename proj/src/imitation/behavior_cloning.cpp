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

#include "audamp/imitation/behavior_cloning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "audamp/common/error.hpp"
#include "audamp/common/logging.hpp"
#include "audamp/common/rng.hpp"
#include "audamp/policy/adam.hpp"

namespace audamp::imitation {

using policy::HeadGradients;
using policy::HeadLossValue;
using policy::HeadOutputs;
using policy::Matrix;

policy::Matrix observations_of(std::span<const LabeledTransition> batch) {
  Matrix m(static_cast<Eigen::Index>(batch.size()), env::kObservationSize);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    for (int j = 0; j < env::kObservationSize; ++j) {
      m(static_cast<Eigen::Index>(i), j) = batch[i].observation[static_cast<std::size_t>(j)];
    }
  }
  return m;
}

policy::HeadLoss bc_head_loss(std::span<const LabeledTransition> batch, const policy::ActionLimits& limits,
                              double entropy_beta) {
  if (batch.empty()) throw Error("bc_loss: empty batch");
  const std::array<double, 2> half_range{limits.v_max / 2.0, limits.omega_max};
  return [batch, half_range, entropy_beta](const HeadOutputs& heads) {
    const auto n = static_cast<Eigen::Index>(batch.size());
    const double inv_n = 1.0 / static_cast<double>(n);
    HeadLossValue out;
    HeadGradients& g = out.grad;
    g.mean = Matrix::Zero(n, heads.mean.cols());
    g.logits = Matrix::Zero(n, heads.logits.cols());
    g.value = policy::Vector::Zero(n);
    g.log_std = policy::Vector::Zero(heads.log_std.size());

    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const env::Action& a = batch[static_cast<std::size_t>(i)].action;
      const std::array<double, 2> target{a.speed, a.turn_rate};
      for (int d = 0; d < 2; ++d) {
        const double scale = half_range[static_cast<std::size_t>(d)];
        const double err = (heads.mean(i, d) - target[static_cast<std::size_t>(d)]) / scale;
        total += err * err;
        g.mean(i, d) = 2.0 * err / scale * inv_n;
      }
      std::array<double, policy::kDiscreteDim> logits{};
      for (int k = 0; k < policy::kDiscreteDim; ++k) logits[static_cast<std::size_t>(k)] = heads.logits(i, k);
      const auto logp = policy::log_softmax(logits);
      const auto p = policy::softmax(logits);
      const double entropy = policy::categorical_entropy(p);
      total += -logp[static_cast<std::size_t>(a.idle_state)] - entropy_beta * entropy;
      for (int k = 0; k < policy::kDiscreteDim; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        const double onehot = k == a.idle_state ? 1.0 : 0.0;
        // d(-H)/dz_k = p_k (log p_k + H)
        g.logits(i, k) = (p[kk] - onehot + entropy_beta * p[kk] * (logp[kk] + entropy)) * inv_n;
      }
    }
    out.loss = total * inv_n;
    return out;
  };
}

double bc_loss(const policy::PolicyParams& params, std::span<const LabeledTransition> batch,
               const policy::ActionLimits& limits, double entropy_beta) {
  return policy::loss_value(params, observations_of(batch), bc_head_loss(batch, limits, entropy_beta));
}

std::pair<std::vector<LabeledTransition>, std::vector<LabeledTransition>> split_transitions(
    const DemoDataset& demos, const env::EnvConfig& env_config, double holdout_fraction, std::uint64_t seed) {
  std::vector<std::size_t> order(demos.episodes.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, 0xb5));
  std::shuffle(order.begin(), order.end(), rng);
  auto n_holdout = static_cast<std::size_t>(std::llround(holdout_fraction * static_cast<double>(order.size())));
  if (holdout_fraction > 0.0 && order.size() > 1) n_holdout = std::clamp<std::size_t>(n_holdout, 1, order.size() - 1);
  std::vector<LabeledTransition> train, heldout;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto part = labeled_transitions(demos.episodes[order[i]], env_config);
    auto& dest = i < n_holdout ? heldout : train;
    dest.insert(dest.end(), part.begin(), part.end());
  }
  return {std::move(train), std::move(heldout)};
}

namespace {

struct SplitMetrics {
  double loss = 0.0;
  double mse = 0.0;
  double idle_accuracy = 0.0;
};

SplitMetrics measure(const policy::PolicyParams& params, std::span<const LabeledTransition> data,
                     const policy::ActionLimits& limits, double beta) {
  SplitMetrics m;
  if (data.empty()) return m;
  const HeadOutputs heads = policy::forward_batch(params, observations_of(data));
  m.loss = bc_head_loss(data, limits, beta)(heads).loss;
  const std::array<double, 2> half_range{limits.v_max / 2.0, limits.omega_max};
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const auto& a = data[i].action;
    const double e0 = (heads.mean(row, 0) - a.speed) / half_range[0];
    const double e1 = (heads.mean(row, 1) - a.turn_rate) / half_range[1];
    m.mse += e0 * e0 + e1 * e1;
    Eigen::Index best = 0;
    heads.logits.row(row).maxCoeff(&best);
    if (best == a.idle_state) ++correct;
  }
  m.mse /= static_cast<double>(data.size());
  m.idle_accuracy = static_cast<double>(correct) / static_cast<double>(data.size());
  return m;
}

}  // namespace

std::array<double, 2> residual_rms(const policy::PolicyParams& params, std::span<const LabeledTransition> data) {
  std::array<double, 2> rms{0.0, 0.0};
  if (data.empty()) return rms;
  const HeadOutputs heads = policy::forward_batch(params, observations_of(data));
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const double e0 = heads.mean(row, 0) - data[i].action.speed;
    const double e1 = heads.mean(row, 1) - data[i].action.turn_rate;
    rms[0] += e0 * e0;
    rms[1] += e1 * e1;
  }
  for (double& r : rms) r = std::sqrt(r / static_cast<double>(data.size()));
  return rms;
}

BcResult bc_train(const policy::PolicyParams& initial, const DemoDataset& demos,
                  const env::EnvConfig& env_config, const BcConfig& config) {
  if (demos.episodes.empty()) throw Error("bc_train: no demonstrations");
  if (config.batch_size < 1) throw ConfigError("bc.batch_size", "bc.batch_size must be >= 1");
  const policy::ActionLimits limits = policy::ActionLimits::from(env_config);
  auto [train, heldout] = split_transitions(demos, env_config, config.holdout_fraction, config.seed);

  BcResult result{initial, {}};
  auto record = [&](int epoch) {
    const SplitMetrics tr = measure(result.params, train, limits, config.entropy_beta);
    const SplitMetrics ho = measure(result.params, heldout, limits, config.entropy_beta);
    result.curve.push_back({epoch, tr.loss, ho.loss, ho.mse, ho.idle_accuracy});
    logger()->debug("bc epoch {}: train {:.5f} heldout {:.5f} mse {:.5f} idle acc {:.4f}", epoch, tr.loss,
                    ho.loss, ho.mse, ho.idle_accuracy);
  };
  record(0);

  policy::AdamState adam(result.params.size());
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<LabeledTransition> batch;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    Rng rng(derive_seed(config.seed, 0xbc, static_cast<std::uint64_t>(epoch)));
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      batch.clear();
      for (std::size_t i = start; i < end; ++i) batch.push_back(train[order[i]]);
      const auto lg = policy::gradients(result.params, observations_of(batch),
                                        bc_head_loss(batch, limits, config.entropy_beta));
      policy::optimizer_step(result.params, lg.grads, adam, config.lr);
    }
    record(epoch);
  }
  if (config.fit_log_std && config.epochs > 0 && !train.empty()) {
    const auto rms = residual_rms(result.params, train);
    for (int d = 0; d < 2; ++d) {
      result.params.log_std()(d) =
          std::clamp(std::log(std::max(rms[static_cast<std::size_t>(d)], 1e-300)), policy::kMinLogStd, policy::kMaxLogStd);
    }
    result.params.canonicalize();
  }
  return result;
}

}  // namespace audamp::imitation
