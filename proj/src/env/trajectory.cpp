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

#include "audamp/env/trajectory.hpp"

#include <cmath>

#include <fmt/format.h>

#include "audamp/common/error.hpp"
#include "audamp/env/floor_plan.hpp"

namespace audamp::env {

double uniform_interval(const Trajectory& trajectory) {
  const auto& s = trajectory.samples;
  if (s.size() < 2) {
    throw Error(fmt::format("trajectory {} has fewer than two samples", trajectory.episode_id));
  }
  const double dt = s[1].t - s[0].t;
  if (!(dt > 0.0)) {
    throw Error(fmt::format("trajectory {} has non-increasing timestamps", trajectory.episode_id));
  }
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (std::abs((s[k].t - s[k - 1].t) - dt) > 1e-9) {
      throw Error(fmt::format("trajectory {} has non-uniform timestamps at sample {}",
                              trajectory.episode_id, k));
    }
  }
  return dt;
}

bool inside_corridor(const Trajectory& trajectory, const FloorPlan& plan) {
  for (const auto& sample : trajectory.samples) {
    if (!plan.inside(sample.position)) return false;
  }
  return true;
}

double path_length(const Trajectory& trajectory) {
  double total = 0.0;
  for (std::size_t k = 1; k < trajectory.samples.size(); ++k) {
    total += distance(trajectory.samples[k].position, trajectory.samples[k - 1].position);
  }
  return total;
}

}  // namespace audamp::env
