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

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include <nlohmann/json.hpp>

#include "audamp/env/corridor_env.hpp"
#include "audamp/eval/motion.hpp"
#include "audamp/policy/policy_net.hpp"
#include "audamp/reward/reward.hpp"

namespace audamp::eval {

struct EvalReport {
  int n_episodes = 0;
  double completion_rate = 0.0;
  double mean_reward = 0.0;
  reward::RewardComponents mean_components;
  std::array<double, env::kZoneCount> mean_dwell{};  // seconds inside each zone
  double mean_duration = 0.0;
  double wall_contact_fraction = 0.0;
  double mean_path_length = 0.0;
  double walking_fraction = 0.0;
  double idle_fraction = 0.0;
  double turning_fraction = 0.0;
};

nlohmann::ordered_json to_json(const EvalReport& report);

struct EvaluationRun {
  EvalReport report;
  std::vector<env::Trajectory> trajectories;
  std::vector<reward::RewardLedger> ledgers;
};

/// Episode e is reset with derive_seed(seed, e); results are reduced in
/// episode order.
EvaluationRun evaluate_controller(env::Controller& controller, const env::EnvConfig& env_config,
                                  const reward::RewardConfig& reward_config, int n_episodes, std::uint64_t seed,
                                  const MotionThresholds& thresholds = {});

/// Deterministic (mode-action) evaluation unless `stochastic` is set.
EvaluationRun evaluate_policy(const policy::PolicyParams& params, const env::EnvConfig& env_config,
                              const reward::RewardConfig& reward_config, int n_episodes, std::uint64_t seed,
                              bool stochastic = false);

}  // namespace audamp::eval
