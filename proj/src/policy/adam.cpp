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

#include "audamp/policy/adam.hpp"

#include <cmath>

#include "audamp/common/error.hpp"

namespace audamp::policy {

void optimizer_step(PolicyParams& params, const Gradients& grads, AdamState& state, double lr,
                    const AdamConfig& config) {
  const std::size_t n = params.size();
  if (grads.size() != n || state.first_moment.size() != n || state.second_moment.size() != n) {
    throw Error("optimizer_step: parameter, gradient and state sizes differ");
  }
  ++state.step;
  const double correction1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
  const double correction2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));
  auto theta = params.values();
  const auto g = grads.values();
  for (std::size_t i = 0; i < n; ++i) {
    double& m = state.first_moment[i];
    double& v = state.second_moment[i];
    m = config.beta1 * m + (1.0 - config.beta1) * g[i];
    v = config.beta2 * v + (1.0 - config.beta2) * g[i] * g[i];
    const double m_hat = m / correction1;
    const double v_hat = v / correction2;
    theta[i] -= lr * m_hat / (std::sqrt(v_hat) + config.epsilon);
  }
  params.canonicalize();
}

double clip_global_norm(Gradients& grads, double max_norm) {
  double sq = 0.0;
  for (double g : grads.values()) sq += g * g;
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (double& g : grads.values()) g *= scale;
  }
  return norm;
}

}  // namespace audamp::policy
