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
#include <filesystem>
#include <vector>

namespace audamp::ppo {

struct Candidate {
  int model_id = 0;
  std::filesystem::path checkpoint;
  double mean_reward = 0.0;  // mean cumulative reward over the evaluation episodes
  std::uint64_t training_seed = 0;

  bool operator==(const Candidate&) const = default;
};

/// Number kept from a pool of n: ceil(fraction * n), at least 1.
std::size_t selection_count(std::size_t n, double fraction);

/// The top ceil(fraction * n) candidates by mean reward, highest first; ties
/// go to the lower model id. Throws Error on an empty pool or a fraction
/// outside (0, 1].
std::vector<Candidate> select_models(const std::vector<Candidate>& candidates, double fraction = 0.30);

}  // namespace audamp::ppo
