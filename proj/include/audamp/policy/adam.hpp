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

#include <cstdint>
#include <vector>

#include "audamp/policy/policy_net.hpp"

namespace audamp::policy {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::int64_t step = 0;

  explicit AdamState(std::size_t parameter_count = 0)
      : first_moment(parameter_count, 0.0), second_moment(parameter_count, 0.0) {}

  bool operator==(const AdamState&) const = default;
};

/// One bias-corrected adaptive-moment update, followed by
/// PolicyParams::canonicalize(). Throws Error on shape mismatch.
void optimizer_step(PolicyParams& params, const Gradients& grads, AdamState& state, double lr,
                    const AdamConfig& config = {});

/// Scales `grads` in place so its global L2 norm is at most `max_norm`;
/// returns the norm before scaling. max_norm <= 0 disables clipping.
double clip_global_norm(Gradients& grads, double max_norm);

}  // namespace audamp::policy
