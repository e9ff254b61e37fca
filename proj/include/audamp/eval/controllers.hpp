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

#include "audamp/common/rng.hpp"
#include "audamp/env/corridor_env.hpp"
#include "audamp/policy/distributions.hpp"
#include "audamp/policy/policy_net.hpp"

namespace audamp::eval {

/// Drives the environment with a policy snapshot: the distribution mode by
/// default, or seeded samples when `stochastic` is set.
class PolicyController : public env::Controller {
 public:
  PolicyController(const policy::PolicyParams& params, bool stochastic = false)
      : params_(params), stochastic_(stochastic) {}

  void begin_episode(const env::CorridorEnv& env, std::uint64_t seed) override;
  env::Action act(const env::CorridorEnv& env) override;

 private:
  const policy::PolicyParams& params_;
  bool stochastic_;
  Rng rng_;
};

/// Uniformly random actions over the full action ranges.
class RandomController : public env::Controller {
 public:
  void begin_episode(const env::CorridorEnv& env, std::uint64_t seed) override;
  env::Action act(const env::CorridorEnv& env) override;

 private:
  Rng rng_;
};

/// Holds a fixed pose for the whole episode.
class StaticController : public env::Controller {
 public:
  void begin_episode(const env::CorridorEnv&, std::uint64_t) override {}
  env::Action act(const env::CorridorEnv&) override { return {}; }
};

}  // namespace audamp::eval
