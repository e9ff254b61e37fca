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

#include "audamp/ppo/gae.hpp"

#include <cmath>
#include <numeric>

#include "audamp/common/error.hpp"

namespace audamp::ppo {

std::vector<double> generalized_advantages(std::span<const double> rewards, std::span<const double> values,
                                           std::span<const std::uint8_t> dones, double bootstrap_value,
                                           double gamma, double lambda) {
  const std::size_t n = rewards.size();
  if (values.size() != n || dones.size() != n) throw Error("generalized_advantages: length mismatch");
  std::vector<double> adv(n, 0.0);
  double running = 0.0;
  for (std::size_t idx = n; idx-- > 0;) {
    const double alive = dones[idx] != 0 ? 0.0 : 1.0;
    const double next_value = idx + 1 == n ? bootstrap_value : values[idx + 1];
    const double delta = rewards[idx] + gamma * next_value * alive - values[idx];
    running = delta + gamma * lambda * alive * running;
    adv[idx] = running;
  }
  return adv;
}

void compute_gae(RolloutBatch& batch, double gamma, double lambda) {
  const auto h = static_cast<std::size_t>(batch.horizon);
  batch.advantages.assign(batch.size(), 0.0);
  batch.returns.assign(batch.size(), 0.0);
  for (std::size_t e = 0; e < static_cast<std::size_t>(batch.n_envs); ++e) {
    const std::size_t off = e * h;
    const auto adv = generalized_advantages(std::span(batch.rewards).subspan(off, h),
                                            std::span(batch.values).subspan(off, h),
                                            std::span(batch.dones).subspan(off, h), batch.bootstrap_values[e],
                                            gamma, lambda);
    for (std::size_t t = 0; t < h; ++t) {
      batch.advantages[off + t] = adv[t];
      batch.returns[off + t] = adv[t] + batch.values[off + t];
    }
  }
}

std::vector<double> normalize_advantages(std::span<const double> advantages) {
  std::vector<double> out(advantages.begin(), advantages.end());
  if (out.size() < 2) {
    std::fill(out.begin(), out.end(), 0.0);
    return out;
  }
  const double mean = std::accumulate(out.begin(), out.end(), 0.0) / static_cast<double>(out.size());
  double var = 0.0;
  for (double a : out) var += (a - mean) * (a - mean);
  const double std = std::sqrt(var / static_cast<double>(out.size()));
  for (double& a : out) a = std > 1e-12 ? (a - mean) / std : 0.0;
  return out;
}

}  // namespace audamp::ppo
