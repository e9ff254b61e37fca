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

#include "audamp/eval/controllers.hpp"

namespace audamp::eval {

void PolicyController::begin_episode(const env::CorridorEnv&, std::uint64_t seed) {
  rng_.seed(derive_seed(seed, 0x5a));
}

env::Action PolicyController::act(const env::CorridorEnv& env) {
  const policy::ActionDistribution dist = policy::forward(params_, env.observe());
  const policy::ActionLimits limits = policy::ActionLimits::from(env.config());
  if (stochastic_) return policy::sample(dist, limits, rng_).action;
  return policy::mode_action(dist, limits);
}

void RandomController::begin_episode(const env::CorridorEnv&, std::uint64_t seed) {
  rng_.seed(derive_seed(seed, 0x7a));
}

env::Action RandomController::act(const env::CorridorEnv& env) {
  const auto& cfg = env.config();
  std::uniform_real_distribution<double> speed(0.0, cfg.v_max);
  std::uniform_real_distribution<double> turn(-cfg.omega_max, cfg.omega_max);
  std::uniform_int_distribution<int> idle(0, env::kIdleStateCount - 1);
  env::Action action;
  action.speed = speed(rng_);
  action.turn_rate = turn(rng_);
  action.idle_state = idle(rng_);
  return action;
}

}  // namespace audamp::eval
