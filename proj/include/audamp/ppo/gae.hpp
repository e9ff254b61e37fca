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
#include <span>
#include <vector>

#include "audamp/ppo/rollout.hpp"

namespace audamp::ppo {

/// Generalized advantage estimates for one contiguous segment. A done flag at
/// step t marks a terminal transition: no bootstrap past it and the
/// exponential sum restarts. `bootstrap_value` is V of the state after the
/// last step and is ignored when that step is terminal.
std::vector<double> generalized_advantages(std::span<const double> rewards, std::span<const double> values,
                                           std::span<const std::uint8_t> dones, double bootstrap_value,
                                           double gamma, double lambda);

/// Fills batch.advantages and batch.returns (= advantages + values) per env segment.
void compute_gae(RolloutBatch& batch, double gamma, double lambda);

/// Shifts and scales to zero mean, unit (population) std; constant or size-1
/// input maps to all zeros.
std::vector<double> normalize_advantages(std::span<const double> advantages);

}  // namespace audamp::ppo
