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

#include "audamp/eval/troupe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "audamp/common/error.hpp"
#include "audamp/common/rng.hpp"
#include "audamp/eval/controllers.hpp"

namespace audamp::eval {

double TroupeRun::mean_dispersion() const {
  if (agents.size() < 2) return 0.0;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < dispersion.size(); ++k) {
    const double t = static_cast<double>(k) * dt;
    std::size_t present = 0;
    for (const auto& a : agents) {
      if (t >= a.samples.front().t - 1e-9 && t <= a.samples.back().t + 1e-9) ++present;
    }
    if (present >= 2) {
      sum += dispersion[k];
      ++count;
    }
  }
  return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

double dispersion(std::span<const Vec2> positions) {
  if (positions.empty()) throw Error("dispersion: no points");
  if (positions.size() == 1) return 0.0;
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      sum += distance(positions[i], positions[j]);
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs);
}

void compute_dispersion_series(TroupeRun& run) {
  run.dispersion.clear();
  if (run.agents.empty() || run.dt <= 0.0) return;
  std::int64_t last = 0;
  std::vector<std::int64_t> first_step;
  for (const auto& a : run.agents) {
    first_step.push_back(std::llround(a.samples.front().t / run.dt));
    last = std::max(last, first_step.back() + static_cast<std::int64_t>(a.samples.size()) - 1);
  }
  run.dispersion.assign(static_cast<std::size_t>(last + 1), 0.0);
  std::vector<Vec2> present;
  for (std::int64_t k = 0; k <= last; ++k) {
    present.clear();
    for (std::size_t i = 0; i < run.agents.size(); ++i) {
      const std::int64_t local = k - first_step[i];
      if (local >= 0 && local < static_cast<std::int64_t>(run.agents[i].samples.size())) {
        present.push_back(run.agents[i].samples[static_cast<std::size_t>(local)].position);
      }
    }
    if (present.size() >= 2) run.dispersion[static_cast<std::size_t>(k)] = dispersion(present);
  }
}

TroupeRun simulate_troupe(const policy::PolicyParams& params, const env::EnvConfig& env_config, int n_agents,
                          std::uint64_t seed, const TroupeOptions& options) {
  if (n_agents < 1) throw Error("simulate_troupe: n_agents must be >= 1");
  TroupeRun run;
  run.n_agents = n_agents;
  run.dt = env_config.dt;
  const std::int64_t stagger_steps = std::llround(options.spawn_stagger / env_config.dt);
  for (int k = 0; k < n_agents; ++k) {
    env::CorridorEnv corridor(env_config);
    PolicyController controller(params, options.stochastic);
    env::Trajectory traj = env::run_episode(corridor, controller, derive_seed(seed, static_cast<std::uint64_t>(k)));
    const double spawn = static_cast<double>(stagger_steps * k) * env_config.dt;
    for (std::size_t s = 0; s < traj.samples.size(); ++s) {
      traj.samples[s].t = static_cast<double>(stagger_steps * k + static_cast<std::int64_t>(s)) * env_config.dt;
    }
    traj.episode_id = k;
    run.spawn_times.push_back(spawn);
    run.agents.push_back(std::move(traj));
  }
  compute_dispersion_series(run);
  return run;
}

TroupeRun npc_baseline(const env::EnvConfig& env_config, double standoff) {
  const env::FloorPlan plan = env::build_floorplan(env_config);
  env::CorridorEnv corridor(env_config);
  TroupeRun run;
  run.dt = env_config.dt;
  const std::int64_t steps = corridor.max_steps();
  int id = 0;
  for (const auto& zone : plan.zones) {
    for (double side : {-1.0, 1.0}) {
      const Vec2 position = zone.center + Vec2{0.0, side * standoff};
      const double heading = std::atan2(zone.center.y - position.y, zone.center.x - position.x);
      env::Trajectory traj;
      traj.episode_id = id++;
      traj.samples.reserve(static_cast<std::size_t>(steps) + 1);
      for (std::int64_t s = 0; s <= steps; ++s) {
        traj.samples.push_back({static_cast<double>(s) * env_config.dt, position, heading, 0});
      }
      run.agents.push_back(std::move(traj));
      run.spawn_times.push_back(0.0);
    }
  }
  run.n_agents = static_cast<int>(run.agents.size());
  compute_dispersion_series(run);
  return run;
}

}  // namespace audamp::eval
