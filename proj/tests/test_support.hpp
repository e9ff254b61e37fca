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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "audamp/common/rng.hpp"
#include "audamp/env/corridor_env.hpp"
#include "audamp/policy/policy_net.hpp"

namespace audamp::testing {

/// Observations from varied reachable states: seeded resets followed by a
/// few random steps.
inline std::vector<env::Observation> sample_observations(int n, std::uint64_t seed) {
  env::CorridorEnv corridor;
  Rng rng(seed);
  std::uniform_real_distribution<double> speed(0.0, 1.5), turn(-2.0, 2.0);
  std::vector<env::Observation> out;
  for (int i = 0; i < n; ++i) {
    corridor.reset(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const int steps = 5 + 40 * i;
    for (int k = 0; k < steps && !corridor.state().done; ++k) corridor.step({speed(rng), turn(rng), 0});
    out.push_back(corridor.observe());
  }
  return out;
}

struct GradientCheck {
  double max_relative_error = 0.0;
  std::size_t worst_index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
};

/// Central finite differences with step h over every parameter. The relative
/// error of one coordinate is |a - n| / max(|a|, |n|, floor); the floor keeps
/// coordinates whose true gradient is zero from dividing rounding noise by
/// zero.
inline GradientCheck finite_difference_check(const policy::PolicyParams& params, const policy::Matrix& obs,
                                             const policy::HeadLoss& loss, double h = 1e-4,
                                             double floor = 1e-6) {
  const policy::LossGradients analytic = policy::gradients(params, obs, loss);
  policy::PolicyParams probe = params;
  GradientCheck out;
  const auto a = analytic.grads.values();
  auto p = probe.values();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double saved = p[i];
    p[i] = saved + h;
    const double up = policy::loss_value(probe, obs, loss);
    p[i] = saved - h;
    const double down = policy::loss_value(probe, obs, loss);
    p[i] = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double rel = std::abs(a[i] - numeric) / std::max({std::abs(a[i]), std::abs(numeric), floor});
    if (rel > out.max_relative_error) out = {rel, i, a[i], numeric};
  }
  return out;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("audamp_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace audamp::testing
