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

#include "audamp/env/corridor_env.hpp"
#include "audamp/env/trajectory.hpp"
#include "audamp/policy/policy_net.hpp"

namespace audamp::eval {

/// A group of agents sharing one floor plan and time step. Trajectory
/// timestamps are global (an agent's first sample is at its spawn time).
/// dispersion[k] is the mean pairwise distance among agents present at
/// t = k * dt; it is 0 whenever fewer than two agents are present.
struct TroupeRun {
  int n_agents = 0;
  double dt = 0.0;
  std::vector<double> spawn_times;
  std::vector<env::Trajectory> agents;
  std::vector<double> dispersion;

  /// Average of the dispersion series over instants with at least two agents
  /// present (0 when there are none).
  double mean_dispersion() const;
};

/// Mean pairwise Euclidean distance; 0 for a single point. Throws Error on empty input.
double dispersion(std::span<const Vec2> positions);

/// Recomputes `run.dispersion` from the agent trajectories.
void compute_dispersion_series(TroupeRun& run);

struct TroupeOptions {
  double spawn_stagger = 3.0;  // s between consecutive spawns
  bool stochastic = false;
};

/// Runs `n_agents` independent copies of the policy, agent k spawning at
/// k * spawn_stagger with reset seed derive_seed(seed, k). Agents do not
/// interact.
TroupeRun simulate_troupe(const policy::PolicyParams& params, const env::EnvConfig& env_config, int n_agents,
                          std::uint64_t seed, const TroupeOptions& options = {});

/// Six static agents, two per zone, standing 1.5 m from the zone center on
/// either side across the corridor and facing it, for the full horizon.
TroupeRun npc_baseline(const env::EnvConfig& env_config, double standoff = 1.5);

}  // namespace audamp::eval
