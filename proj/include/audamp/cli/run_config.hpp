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
#include <string>

#include <nlohmann/json.hpp>

#include "audamp/env/floor_plan.hpp"
#include "audamp/imitation/behavior_cloning.hpp"
#include "audamp/policy/policy_net.hpp"
#include "audamp/ppo/trainer.hpp"
#include "audamp/reward/reward.hpp"

namespace audamp::cli {

struct NetSection {
  policy::NetLayout layout;
  policy::InitOptions init;

  bool operator==(const NetSection& o) const {
    return layout == o.layout && init.trunk_gain == o.init.trunk_gain && init.policy_gain == o.init.policy_gain &&
           init.value_gain == o.init.value_gain && init.initial_log_std == o.init.initial_log_std;
  }
};

/// Training-time BC settings plus the synthetic demonstrations used when no
/// demo file is configured.
struct BcSection {
  imitation::BcConfig config;
  int demo_episodes = 60;
  std::uint64_t demo_seed = 1;

  bool operator==(const BcSection&) const = default;
};

struct EvalSection {
  int episodes = 50;
  std::uint64_t seed = 999;
  bool stochastic = false;
  int selection_episodes = 20;  // per candidate when ranking a pool
  std::uint64_t selection_seed = 12345;
  double selection_fraction = 0.30;
  int troupe_agents = 6;
  std::uint64_t troupe_seed = 5;
  double spawn_stagger = 3.0;
  double npc_standoff = 1.5;

  bool operator==(const EvalSection&) const = default;
};

struct PathsSection {
  std::filesystem::path demo_file;  // empty: generate oracle demonstrations
  std::filesystem::path checkpoint_dir = "checkpoints";
  std::filesystem::path log_dir = "logs";

  bool operator==(const PathsSection&) const = default;
};

struct RunConfig {
  env::EnvConfig env;
  reward::RewardConfig reward;
  NetSection net;
  BcSection bc;
  ppo::TrainConfig ppo;
  EvalSection eval;
  PathsSection paths;

  /// Throws ConfigError naming the first offending key.
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

/// Every field, in declaration order; the input format of parse_config.
nlohmann::ordered_json to_json(const RunConfig& config);

/// Builds a config from JSON: missing keys take defaults, unknown keys and
/// wrongly typed values raise ConfigError with the key path, and the result is
/// validated.
RunConfig from_json(const nlohmann::json& document);

/// Parses JSON text. Syntax errors raise ConfigError whose message carries the
/// line and column; `source` names the input in messages.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");

/// Reads and parses a config file. A missing file raises Error.
RunConfig load_config(const std::filesystem::path& path);

/// Writes the resolved config as `resolved_config.json` under `dir`, creating
/// it if needed; returns the file path.
std::filesystem::path echo_config(const RunConfig& config, const std::filesystem::path& dir);

}  // namespace audamp::cli
