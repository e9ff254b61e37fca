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

#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "audamp/common/error.hpp"
#include "audamp/env/corridor_env.hpp"
#include "audamp/eval/controllers.hpp"
#include "audamp/imitation/oracle_teacher.hpp"
#include "audamp/reward/reward.hpp"

namespace audamp::reward {
namespace {

env::StepEvents quiet_events(std::int64_t episode = 0) {
  env::StepEvents ev;
  ev.episode_id = episode;
  ev.dt = 0.1;
  return ev;
}

void expect_components_near(const RewardComponents& a, const RewardComponents& b, double tol) {
  EXPECT_NEAR(a.entry, b.entry, tol);
  EXPECT_NEAR(a.completion, b.completion, tol);
  EXPECT_NEAR(a.dwell, b.dwell, tol);
  EXPECT_NEAR(a.shaping, b.shaping, tol);
  EXPECT_NEAR(a.penalty, b.penalty, tol);
}

TEST(StepRewardTest, FirstEntryPaysFirstEntryReward) {
  env::StepEvents ev = quiet_events();
  ev.entered_zone_first_time = 2;  // order, not identity, picks the amount
  ev.inside_zone = 2;
  const StepReward r = step_reward(ev, RewardLedger::for_episode(0), RewardConfig{});
  EXPECT_DOUBLE_EQ(r.components.entry, 48.2);
  EXPECT_EQ(r.ledger.entries_made, 1);
}

TEST(StepRewardTest, ThirdEntryWithCompletion) {
  RewardLedger ledger = RewardLedger::for_episode(0);
  ledger.entries_made = 2;
  env::StepEvents ev = quiet_events();
  ev.entered_zone_first_time = 0;
  ev.all_zones_just_completed = true;
  const StepReward r = step_reward(ev, ledger, RewardConfig{});
  EXPECT_DOUBLE_EQ(r.components.entry, 85.5);
  EXPECT_DOUBLE_EQ(r.components.completion, 41.0);
  EXPECT_NEAR(r.reward, 126.5, 1e-12);
}

TEST(StepRewardTest, ZoneIndexingPaysByIdentity) {
  RewardConfig config;
  config.entry_indexing = EntryIndexing::kByZone;
  env::StepEvents ev = quiet_events();
  ev.entered_zone_first_time = 2;
  EXPECT_DOUBLE_EQ(step_reward(ev, RewardLedger::for_episode(0), config).components.entry, 85.5);
}

TEST(StepRewardTest, ShapingAndPenaltyRates) {
  env::StepEvents closer = quiet_events();
  closer.moved_closer_to_target = true;
  EXPECT_NEAR(step_reward(closer, RewardLedger::for_episode(0), RewardConfig{}).reward, 0.003, 1e-15);

  env::StepEvents wall = quiet_events();
  wall.wall_contact = true;
  const StepReward r = step_reward(wall, RewardLedger::for_episode(0), RewardConfig{});
  EXPECT_NEAR(r.reward, -0.001, 1e-15);
  EXPECT_LE(r.components.penalty, 0.0);
}

TEST(StepRewardTest, DwellIsCappedPerZone) {
  const RewardConfig config;
  RewardLedger ledger = RewardLedger::for_episode(0);
  double dwell = 0.0;
  for (int k = 0; k < 400; ++k) {
    env::StepEvents ev = quiet_events();
    ev.inside_zone = 1;
    ev.dwell_credit = 0.1;
    const StepReward r = step_reward(ev, ledger, config);
    ledger = r.ledger;
    dwell += r.components.dwell;
  }
  EXPECT_NEAR(dwell, config.dwell_rate * 17.0, 1e-9);
  EXPECT_LE(ledger.totals.dwell, config.dwell_rate * 17.0 + 1e-9);
}

TEST(StepRewardTest, EpisodeMismatchThrows) {
  EXPECT_THROW(step_reward(quiet_events(3), RewardLedger::for_episode(4), RewardConfig{}), Error);
}

TEST(StepRewardTest, LedgerTotalsSumToCumulative) {
  env::StepEvents ev = quiet_events();
  ev.entered_zone_first_time = 0;
  ev.inside_zone = 0;
  ev.dwell_credit = 0.1;
  ev.moved_closer_to_target = true;
  ev.wall_contact = true;
  const StepReward r = step_reward(ev, RewardLedger::for_episode(0), RewardConfig{});
  EXPECT_NEAR(r.ledger.cumulative_reward, r.ledger.totals.total(), 1e-12);
  EXPECT_NEAR(r.reward, 48.2 + 0.1 + 0.003 - 0.001, 1e-12);
}

TEST(FixedComponentMaxTest, Examples) {
  RewardConfig config;
  EXPECT_NEAR(fixed_component_max(config), 289.4, 1e-9);
  config.dwell_rate = 0.0;
  EXPECT_NEAR(fixed_component_max(config), 238.4, 1e-9);
  config = RewardConfig{};
  config.entry_rewards = {0.0, 0.0, 0.0};
  config.completion_bonus = 0.0;
  EXPECT_NEAR(fixed_component_max(config), 51.0, 1e-9);
}

TEST(ReplayRewardsTest, StationaryTrackEarnsNothing) {
  const auto plan = env::build_floorplan(env::EnvConfig{});
  env::Trajectory traj;
  for (int k = 0; k < 50; ++k) traj.samples.push_back({0.1 * k, {4.0, 2.9}, 0.0, 0});
  const RewardComponents c = replay_rewards(traj, plan, RewardConfig{});
  expect_components_near(c, RewardComponents{}, 0.0);
}

TEST(ReplayRewardsTest, RejectsNonUniformTimestamps) {
  const auto plan = env::build_floorplan(env::EnvConfig{});
  env::Trajectory traj;
  traj.samples = {{0.0, {4.0, 2.9}, 0.0, 0}, {0.1, {4.0, 2.9}, 0.0, 0}, {0.3, {4.0, 2.9}, 0.0, 0}};
  EXPECT_THROW(replay_rewards(traj, plan, RewardConfig{}), Error);
}

TEST(ReplayRewardsTest, OracleTrackEarnsEveryFixedReward) {
  const env::EnvConfig config;
  env::CorridorEnv env(config);
  imitation::OracleTeacher teacher;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const env::Trajectory traj = env::run_episode(env, teacher, seed);
    const RewardComponents c = replay_rewards(traj, env.plan(), RewardConfig{});
    EXPECT_NEAR(c.entry + c.completion, 238.4, 1e-9);
    EXPECT_NEAR(c.dwell, 51.0, 1e-9);
  }
}

// Online ledger vs position-only replay over random and scripted episodes.
TEST(ReplayRewardsTest, MatchesOnlineLedger) {
  const env::EnvConfig env_config;
  const RewardConfig config;
  env::CorridorEnv env(env_config);
  eval::RandomController random;
  imitation::OracleTeacher teacher;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    env::Controller& controller = seed % 4 == 0 ? static_cast<env::Controller&>(teacher) : random;
    RewardLedger ledger;
    bool first = true;
    const env::Trajectory traj = env::run_episode(env, controller, seed, [&](const env::StepResult& r) {
      if (first) {
        ledger = RewardLedger::for_episode(r.events.episode_id);
        first = false;
      }
      ledger = step_reward(r.events, ledger, config).ledger;
    });
    const RewardComponents replayed = replay_rewards(traj, env.plan(), config);
    expect_components_near(replayed, ledger.totals, 1e-9);
    EXPECT_NEAR(ledger.cumulative_reward, ledger.totals.total(), 1e-9);
    EXPECT_GE(ledger.totals.shaping, 0.0);
    EXPECT_LE(ledger.totals.penalty, 0.0);
    const double partial_sums[] = {0.0, 48.2, 111.9, 197.4};
    const double entry = ledger.totals.entry;
    EXPECT_TRUE(std::any_of(std::begin(partial_sums), std::end(partial_sums),
                            [entry](double s) { return std::abs(s - entry) < 1e-9; }))
        << entry;
  }
}

TEST(ReplayRewardsTest, EntryTotalIsPermutationInvariant) {
  const auto plan = env::build_floorplan(env::EnvConfig{});
  // Visit zones in the orders 0,1,2 and 2,0,1 by teleporting between centers.
  auto track = [](std::initializer_list<double> xs) {
    env::Trajectory t;
    int k = 0;
    t.samples.push_back({0.0, {4.0, 2.9}, 0.0, 0});
    for (double x : xs) t.samples.push_back({0.1 * ++k, {x, 2.9}, 0.0, 0});
    return t;
  };
  const auto a = replay_rewards(track({9.0, 17.0, 25.0}), plan, RewardConfig{});
  const auto b = replay_rewards(track({25.0, 9.0, 17.0}), plan, RewardConfig{});
  EXPECT_NEAR(a.entry, 197.4, 1e-12);
  EXPECT_NEAR(b.entry, 197.4, 1e-12);
}

}  // namespace
}  // namespace audamp::reward
