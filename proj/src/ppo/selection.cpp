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

#include "audamp/ppo/selection.hpp"

#include <algorithm>
#include <cmath>

#include "audamp/common/error.hpp"

namespace audamp::ppo {

std::size_t selection_count(std::size_t n, double fraction) {
  // The slack keeps products such as 0.3 * 10 = 3.0000000000000004 from rounding up.
  const double raw = std::ceil(fraction * static_cast<double>(n) - 1e-9);
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(raw, 1.0)), 1, n);
}

std::vector<Candidate> select_models(const std::vector<Candidate>& candidates, double fraction) {
  if (candidates.empty()) throw Error("select_models: no candidates");
  if (!(fraction > 0.0 && fraction <= 1.0)) throw Error("select_models: fraction must be in (0, 1]");
  std::vector<Candidate> ranked = candidates;
  std::stable_sort(ranked.begin(), ranked.end(), [](const Candidate& a, const Candidate& b) {
    if (a.mean_reward != b.mean_reward) return a.mean_reward > b.mean_reward;
    return a.model_id < b.model_id;
  });
  ranked.resize(selection_count(ranked.size(), fraction));
  return ranked;
}

}  // namespace audamp::ppo
