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

#include "audamp/cli/run_config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "audamp/common/error.hpp"
#include "audamp/env/corridor_env.hpp"

namespace audamp::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Reads typed fields of one JSON object, remembering which keys were
// consumed so leftovers can be reported as unknown.
class Section {
 public:
  Section(const json& object, std::string path) : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) throw ConfigError(path_, fmt::format("{} must be an object", path_));
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = object_.find(key);
    return it == object_.end() ? nullptr : &*it;
  }

  std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  [[noreturn]] void type_error(const std::string& key, const char* expected) const {
    throw ConfigError(key_path(key), fmt::format("{} must be {}", key_path(key), expected));
  }

  void get(const std::string& key, double& out) {
    const json* v = find(key);
    if (v == nullptr) return;
    if (!v->is_number()) type_error(key, "a number");
    out = v->get<double>();
    if (!std::isfinite(out)) type_error(key, "finite");
  }

  void get(const std::string& key, int& out) {
    const json* v = find(key);
    if (v == nullptr) return;
    if (!v->is_number_integer()) type_error(key, "an integer");
    const auto value = v->get<std::int64_t>();
    if (v->is_number_unsigned() && v->get<std::uint64_t>() > static_cast<std::uint64_t>(INT32_MAX)) {
      type_error(key, "a 32-bit integer");
    }
    if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max()) {
      type_error(key, "a 32-bit integer");
    }
    out = static_cast<int>(value);
  }

  void get(const std::string& key, std::int64_t& out) {
    const json* v = find(key);
    if (v == nullptr) return;
    if (!v->is_number_integer()) type_error(key, "an integer");
    if (v->is_number_unsigned() && v->get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      type_error(key, "a 64-bit integer");
    }
    out = v->get<std::int64_t>();
  }

  void get(const std::string& key, std::uint64_t& out) {
    const json* v = find(key);
    if (v == nullptr) return;
    if (!v->is_number_unsigned()) type_error(key, "a non-negative integer");
    out = v->get<std::uint64_t>();
  }

  void get(const std::string& key, bool& out) {
    const json* v = find(key);
    if (v == nullptr) return;
    if (!v->is_boolean()) type_error(key, "a boolean");
    out = v->get<bool>();
  }

  void get(const std::string& key, std::filesystem::path& out) {
    const json* v = find(key);
    if (v == nullptr) return;
    if (!v->is_string()) type_error(key, "a string");
    out = v->get<std::string>();
  }

  void get(const std::string& key, Vec2& out) {
    const json* v = find(key);
    if (v == nullptr) return;
    if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
      type_error(key, "an array of two numbers");
    }
    out = {(*v)[0].get<double>(), (*v)[1].get<double>()};
  }

  template <typename T, std::size_t N>
  void get(const std::string& key, std::array<T, N>& out) {
    const json* v = find(key);
    if (v == nullptr) return;
    const bool integral = std::is_integral_v<T>;
    const char* expected = integral ? "an array of integers" : "an array of numbers";
    if (!v->is_array() || v->size() != N) {
      throw ConfigError(key_path(key), fmt::format("{} must be an array of {} elements", key_path(key), N));
    }
    for (std::size_t i = 0; i < N; ++i) {
      const json& e = (*v)[i];
      if (integral ? !e.is_number_integer() : !e.is_number()) type_error(key, expected);
      out[i] = e.get<T>();
    }
  }

  void get(const std::string& key, reward::EntryIndexing& out) {
    const json* v = find(key);
    if (v == nullptr) return;
    const std::string s = v->is_string() ? v->get<std::string>() : "";
    if (s == "by_order") {
      out = reward::EntryIndexing::kByOrder;
    } else if (s == "by_zone") {
      out = reward::EntryIndexing::kByZone;
    } else {
      type_error(key, "\"by_order\" or \"by_zone\"");
    }
  }

  /// Nested object; absent means all defaults.
  std::optional<Section> child(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) return std::nullopt;
    return Section(*v, key_path(key));
  }

  void reject_unknown() const {
    for (const auto& [key, value] : object_.items()) {
      if (!seen_.contains(key)) {
        throw ConfigError(key_path(key), fmt::format("unknown key '{}'", key_path(key)));
      }
    }
  }

 private:
  const json& object_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_env(Section& s, env::EnvConfig& c) {
  s.get("area", c.area);
  s.get("width", c.width);
  s.get("first_zone_x", c.first_zone_x);
  s.get("zone_spacing", c.zone_spacing);
  s.get("zone_y", c.zone_y);
  s.get("zone_area", c.zone_area);
  s.get("performance_duration", c.performance_duration);
  s.get("spawn_point", c.spawn_point);
  s.get("exit_x", c.exit_x);
  s.get("wall_margin", c.wall_margin);
  s.get("dt", c.dt);
  s.get("v_max", c.v_max);
  s.get("omega_max", c.omega_max);
  s.get("horizon", c.horizon);
  s.get("spawn_jitter", c.spawn_jitter);
}

void read_reward(Section& s, reward::RewardConfig& c) {
  s.get("entry_rewards", c.entry_rewards);
  s.get("completion_bonus", c.completion_bonus);
  s.get("proximity_rate", c.proximity_rate);
  s.get("wall_penalty_rate", c.wall_penalty_rate);
  s.get("dwell_rate", c.dwell_rate);
  s.get("dwell_cap", c.dwell_cap);
  s.get("entry_indexing", c.entry_indexing);
}

void read_net(Section& s, NetSection& c) {
  s.get("input_dim", c.layout.input_dim);
  s.get("hidden", c.layout.hidden);
  s.get("continuous_dim", c.layout.continuous_dim);
  s.get("discrete_cardinality", c.layout.discrete_cardinality);
  s.get("trunk_gain", c.init.trunk_gain);
  s.get("policy_gain", c.init.policy_gain);
  s.get("value_gain", c.init.value_gain);
  s.get("initial_log_std", c.init.initial_log_std);
}

void read_bc(Section& s, BcSection& c) {
  s.get("epochs", c.config.epochs);
  s.get("batch_size", c.config.batch_size);
  s.get("lr", c.config.lr);
  s.get("holdout_fraction", c.config.holdout_fraction);
  s.get("entropy_beta", c.config.entropy_beta);
  s.get("fit_log_std", c.config.fit_log_std);
  s.get("demo_episodes", c.demo_episodes);
  s.get("demo_seed", c.demo_seed);
}

void read_ppo(Section& s, ppo::TrainConfig& c) {
  s.get("total_steps", c.total_steps);
  s.get("n_envs", c.n_envs);
  s.get("horizon", c.horizon);
  s.get("epochs", c.epochs);
  s.get("minibatch_size", c.minibatch_size);
  s.get("gamma", c.gamma);
  s.get("lambda", c.lambda);
  s.get("clip_epsilon", c.clip_epsilon);
  s.get("value_coef", c.value_coef);
  s.get("entropy_coef", c.entropy_coef);
  s.get("lr", c.lr);
  s.get("max_grad_norm", c.max_grad_norm);
  s.get("bc_regularizer", c.bc_regularizer);
  s.get("bc_pretrain", c.bc_pretrain);
  s.get("checkpoint_interval", c.checkpoint_interval);
  s.get("seed", c.seed);
}

void read_eval(Section& s, EvalSection& c) {
  s.get("episodes", c.episodes);
  s.get("seed", c.seed);
  s.get("stochastic", c.stochastic);
  s.get("selection_episodes", c.selection_episodes);
  s.get("selection_seed", c.selection_seed);
  s.get("selection_fraction", c.selection_fraction);
  s.get("troupe_agents", c.troupe_agents);
  s.get("troupe_seed", c.troupe_seed);
  s.get("spawn_stagger", c.spawn_stagger);
  s.get("npc_standoff", c.npc_standoff);
}

void read_paths(Section& s, PathsSection& c) {
  s.get("demo_file", c.demo_file);
  s.get("checkpoint_dir", c.checkpoint_dir);
  s.get("log_dir", c.log_dir);
}

template <typename T, typename Reader>
void read_section(Section& root, const std::string& key, T& target, Reader reader) {
  if (auto s = root.child(key)) {
    reader(*s, target);
    s->reject_unknown();
  }
}

void require(bool ok, const char* key, const char* what) {
  if (!ok) throw ConfigError(key, fmt::format("{} {}", key, what));
}

std::string entry_indexing_name(reward::EntryIndexing e) {
  return e == reward::EntryIndexing::kByZone ? "by_zone" : "by_order";
}

}  // namespace

void RunConfig::validate() const {
  // Geometry and time-step checks live with the environment.
  const env::CorridorEnv probe(env);
  require(env.v_max > 0.0, "env.v_max", "must be > 0");
  require(env.omega_max > 0.0, "env.omega_max", "must be > 0");
  require(env.spawn_jitter >= 0.0, "env.spawn_jitter", "must be >= 0");

  for (double r : reward.entry_rewards) require(std::isfinite(r), "reward.entry_rewards", "must be finite");
  require(reward.proximity_rate >= 0.0, "reward.proximity_rate", "must be >= 0");
  require(reward.wall_penalty_rate >= 0.0, "reward.wall_penalty_rate", "must be >= 0");
  require(reward.dwell_rate >= 0.0, "reward.dwell_rate", "must be >= 0");
  require(reward.dwell_cap >= 0.0, "reward.dwell_cap", "must be >= 0");

  net.layout.validate();
  require(net.init.trunk_gain > 0.0, "net.trunk_gain", "must be > 0");
  require(net.init.policy_gain > 0.0, "net.policy_gain", "must be > 0");
  require(net.init.value_gain > 0.0, "net.value_gain", "must be > 0");
  require(net.init.initial_log_std >= policy::kMinLogStd && net.init.initial_log_std <= policy::kMaxLogStd,
          "net.initial_log_std", "must be in [-5,2]");

  require(bc.config.epochs >= 0, "bc.epochs", "must be >= 0");
  require(bc.config.batch_size >= 1, "bc.batch_size", "must be >= 1");
  require(bc.config.lr > 0.0, "bc.lr", "must be > 0");
  require(bc.config.holdout_fraction >= 0.0 && bc.config.holdout_fraction < 1.0, "bc.holdout_fraction",
          "must be in [0,1)");
  require(bc.config.entropy_beta >= 0.0, "bc.entropy_beta", "must be >= 0");
  require(bc.demo_episodes >= 1, "bc.demo_episodes", "must be >= 1");

  ppo.validate();

  require(eval.episodes >= 1, "eval.episodes", "must be >= 1");
  require(eval.selection_episodes >= 1, "eval.selection_episodes", "must be >= 1");
  require(eval.selection_fraction > 0.0 && eval.selection_fraction <= 1.0, "eval.selection_fraction",
          "must be in (0,1]");
  require(eval.troupe_agents >= 1, "eval.troupe_agents", "must be >= 1");
  require(eval.spawn_stagger >= 0.0, "eval.spawn_stagger", "must be >= 0");
  require(eval.npc_standoff > 0.0, "eval.npc_standoff", "must be > 0");
}

ordered_json to_json(const RunConfig& c) {
  ordered_json j;
  const auto& e = c.env;
  j["env"] = {{"area", e.area},
              {"width", e.width},
              {"first_zone_x", e.first_zone_x},
              {"zone_spacing", e.zone_spacing},
              {"zone_y", e.zone_y},
              {"zone_area", e.zone_area},
              {"performance_duration", e.performance_duration},
              {"spawn_point", {e.spawn_point.x, e.spawn_point.y}},
              {"exit_x", e.exit_x},
              {"wall_margin", e.wall_margin},
              {"dt", e.dt},
              {"v_max", e.v_max},
              {"omega_max", e.omega_max},
              {"horizon", e.horizon},
              {"spawn_jitter", e.spawn_jitter}};
  const auto& r = c.reward;
  j["reward"] = {{"entry_rewards", r.entry_rewards},
                 {"completion_bonus", r.completion_bonus},
                 {"proximity_rate", r.proximity_rate},
                 {"wall_penalty_rate", r.wall_penalty_rate},
                 {"dwell_rate", r.dwell_rate},
                 {"dwell_cap", r.dwell_cap},
                 {"entry_indexing", entry_indexing_name(r.entry_indexing)}};
  const auto& n = c.net;
  j["net"] = {{"input_dim", n.layout.input_dim},
              {"hidden", n.layout.hidden},
              {"continuous_dim", n.layout.continuous_dim},
              {"discrete_cardinality", n.layout.discrete_cardinality},
              {"trunk_gain", n.init.trunk_gain},
              {"policy_gain", n.init.policy_gain},
              {"value_gain", n.init.value_gain},
              {"initial_log_std", n.init.initial_log_std}};
  const auto& b = c.bc;
  j["bc"] = {{"epochs", b.config.epochs},
             {"batch_size", b.config.batch_size},
             {"lr", b.config.lr},
             {"holdout_fraction", b.config.holdout_fraction},
             {"entropy_beta", b.config.entropy_beta},
             {"fit_log_std", b.config.fit_log_std},
             {"demo_episodes", b.demo_episodes},
             {"demo_seed", b.demo_seed}};
  const auto& p = c.ppo;
  j["ppo"] = {{"total_steps", p.total_steps},
              {"n_envs", p.n_envs},
              {"horizon", p.horizon},
              {"epochs", p.epochs},
              {"minibatch_size", p.minibatch_size},
              {"gamma", p.gamma},
              {"lambda", p.lambda},
              {"clip_epsilon", p.clip_epsilon},
              {"value_coef", p.value_coef},
              {"entropy_coef", p.entropy_coef},
              {"lr", p.lr},
              {"max_grad_norm", p.max_grad_norm},
              {"bc_regularizer", p.bc_regularizer},
              {"bc_pretrain", p.bc_pretrain},
              {"checkpoint_interval", p.checkpoint_interval},
              {"seed", p.seed}};
  const auto& v = c.eval;
  j["eval"] = {{"episodes", v.episodes},
               {"seed", v.seed},
               {"stochastic", v.stochastic},
               {"selection_episodes", v.selection_episodes},
               {"selection_seed", v.selection_seed},
               {"selection_fraction", v.selection_fraction},
               {"troupe_agents", v.troupe_agents},
               {"troupe_seed", v.troupe_seed},
               {"spawn_stagger", v.spawn_stagger},
               {"npc_standoff", v.npc_standoff}};
  j["paths"] = {{"demo_file", c.paths.demo_file.string()},
                {"checkpoint_dir", c.paths.checkpoint_dir.string()},
                {"log_dir", c.paths.log_dir.string()}};
  return j;
}

RunConfig from_json(const json& document) {
  RunConfig config;
  Section root(document, "");
  read_section(root, "env", config.env, read_env);
  read_section(root, "reward", config.reward, read_reward);
  read_section(root, "net", config.net, read_net);
  read_section(root, "bc", config.bc, read_bc);
  read_section(root, "ppo", config.ppo, read_ppo);
  read_section(root, "eval", config.eval, read_eval);
  read_section(root, "paths", config.paths, read_paths);
  root.reject_unknown();
  config.validate();
  return config;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    // Recompute line and column from the byte offset of the failure.
    const std::size_t offset = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    // Keep only the library's description, which follows its own position prefix.
    std::string detail = e.what();
    if (const auto at = detail.find(": ", detail.find("parse error")); at != std::string::npos) {
      detail = detail.substr(at + 2);
    }
    throw ConfigError("", fmt::format("{}:{}:{}: JSON parse error: {}", source, line, column, detail));
  }
  return from_json(document);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open config file {}", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

std::filesystem::path echo_config(const RunConfig& config, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto path = dir / "resolved_config.json";
  std::ofstream out(path);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  out << to_json(config).dump(2) << "\n";
  return path;
}

}  // namespace audamp::cli
