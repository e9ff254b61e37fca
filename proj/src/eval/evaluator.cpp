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

#include "audamp/eval/evaluator.hpp"

#include "audamp/common/error.hpp"
#include "audamp/common/rng.hpp"
#include "audamp/eval/controllers.hpp"

namespace audamp::eval {

nlohmann::ordered_json to_json(const EvalReport& r) {
  return {
      {"n_episodes", r.n_episodes},
      {"completion_rate", r.completion_rate},
      {"mean_reward", r.mean_reward},
      {"mean_components",
       {{"entry", r.mean_components.entry},
        {"completion", r.mean_components.completion},
        {"dwell", r.mean_components.dwell},
        {"shaping", r.mean_components.shaping},
        {"penalty", r.mean_components.penalty}}},
      {"mean_dwell", r.mean_dwell},
      {"mean_duration", r.mean_duration},
      {"wall_contact_fraction", r.wall_contact_fraction},
      {"mean_path_length", r.mean_path_length},
      {"motion_fractions",
       {{"walking", r.walking_fraction}, {"idle", r.idle_fraction}, {"turning", r.turning_fraction}}},
  };
}

EvaluationRun evaluate_controller(env::Controller& controller, const env::EnvConfig& env_config,
                                  const reward::RewardConfig& reward_config, int n_episodes, std::uint64_t seed,
                                  const MotionThresholds& thresholds) {
  if (n_episodes < 1) throw Error("evaluate: n_episodes must be >= 1");
  env::CorridorEnv corridor(env_config);
  EvaluationRun run;
  EvalReport& report = run.report;
  report.n_episodes = n_episodes;
  std::int64_t total_steps = 0;
  std::int64_t wall_steps = 0;

  for (int e = 0; e < n_episodes; ++e) {
    reward::RewardLedger ledger;
    std::array<double, env::kZoneCount> inside{};
    bool first = true;
    auto on_step = [&](const env::StepResult& step) {
      if (first) {
        ledger = reward::RewardLedger::for_episode(step.events.episode_id);
        first = false;
      }
      ledger = reward::step_reward(step.events, ledger, reward_config).ledger;
      if (step.events.inside_zone) inside[static_cast<std::size_t>(*step.events.inside_zone)] += step.events.dt;
      if (step.events.wall_contact) ++wall_steps;
      ++total_steps;
    };
    env::Trajectory traj =
        env::run_episode(corridor, controller, derive_seed(seed, static_cast<std::uint64_t>(e)), on_step);
    traj.episode_id = e;

    report.mean_reward += ledger.cumulative_reward;
    report.mean_components += ledger.totals;
    if (corridor.state().visited_count() == env::kZoneCount) report.completion_rate += 1.0;
    for (std::size_t z = 0; z < inside.size(); ++z) report.mean_dwell[z] += inside[z];
    report.mean_duration += corridor.state().time;
    report.mean_path_length += env::path_length(traj);
    run.trajectories.push_back(std::move(traj));
    run.ledgers.push_back(ledger);
  }

  const double n = n_episodes;
  report.completion_rate /= n;
  report.mean_reward /= n;
  report.mean_components.entry /= n;
  report.mean_components.completion /= n;
  report.mean_components.dwell /= n;
  report.mean_components.shaping /= n;
  report.mean_components.penalty /= n;
  for (double& d : report.mean_dwell) d /= n;
  report.mean_duration /= n;
  report.mean_path_length /= n;
  report.wall_contact_fraction = total_steps > 0 ? static_cast<double>(wall_steps) / static_cast<double>(total_steps) : 0.0;
  const MotionProfile profile = motion_profile(run.trajectories, thresholds);
  report.walking_fraction = profile.walking;
  report.idle_fraction = profile.idle;
  report.turning_fraction = profile.turning;
  return run;
}

EvaluationRun evaluate_policy(const policy::PolicyParams& params, const env::EnvConfig& env_config,
                              const reward::RewardConfig& reward_config, int n_episodes, std::uint64_t seed,
                              bool stochastic) {
  PolicyController controller(params, stochastic);
  return evaluate_controller(controller, env_config, reward_config, n_episodes, seed);
}

}  // namespace audamp::eval
