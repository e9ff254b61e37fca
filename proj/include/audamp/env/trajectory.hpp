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

#include "audamp/common/geometry.hpp"

namespace audamp::env {

struct FloorPlan;

struct TrajectorySample {
  double t = 0.0;
  Vec2 position;
  double heading = 0.0;
  int idle_state = 0;

  bool operator==(const TrajectorySample&) const = default;
};

/// Time-stamped position track of one agent episode. Sample k+1 carries the
/// idle state of the action that produced it; sample 0 is the spawn pose.
struct Trajectory {
  std::int64_t episode_id = 0;
  std::vector<TrajectorySample> samples;

  bool operator==(const Trajectory&) const = default;
};

/// Returns the constant sample spacing. Throws Error on fewer than two
/// samples or when any spacing deviates from the first by more than 1e-9 s.
double uniform_interval(const Trajectory& trajectory);

/// True when every sample lies inside the corridor.
bool inside_corridor(const Trajectory& trajectory, const FloorPlan& plan);

/// Sum of Euclidean segment lengths.
double path_length(const Trajectory& trajectory);

}  // namespace audamp::env
