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
#include "audamp/imitation/oracle_teacher.hpp"

namespace audamp::imitation {

enum class DemoSource { kSyntheticOracle, kImported };

struct DemoDataset {
  std::vector<env::Trajectory> episodes;
  double sample_dt = 0.0;
  DemoSource source = DemoSource::kSyntheticOracle;

  /// Sum over episodes of (last t - first t).
  double total_duration() const;
};

/// Observation/action supervision pair.
struct LabeledTransition {
  env::Observation observation{};
  env::Action action;
};

/// Runs the scripted teacher for `n_episodes` seeded episodes.
DemoDataset generate_oracle_demos(const env::EnvConfig& config, int n_episodes, std::uint64_t seed,
                                  const OracleOptions& options = {});

/// Recovers per-step actions from a position track: speed from displacement,
/// turn rate from the wrapped heading change, idle state from the sample that
/// the step produced. Throws Error on non-uniform timestamps.
std::vector<env::Action> derive_actions(const env::Trajectory& trajectory, const env::EnvConfig& config);

/// Re-integrates `actions` from the first sample's pose with the environment
/// kinematics; returns the reconstructed positions (one per sample).
std::vector<Vec2> integrate_actions(const env::Trajectory& trajectory, std::span<const env::Action> actions,
                                    const env::EnvConfig& config);

/// Throws Error unless timestamps are uniform with spacing `config.dt` and
/// every position lies inside the corridor.
void validate_dataset(const DemoDataset& dataset, const env::EnvConfig& config);

/// Pairs the observation at each sample with the action that follows it.
std::vector<LabeledTransition> labeled_transitions(const env::Trajectory& trajectory,
                                                   const env::EnvConfig& config);
std::vector<LabeledTransition> labeled_transitions(const DemoDataset& dataset, const env::EnvConfig& config);

}  // namespace audamp::imitation
