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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "audamp/common/error.hpp"
#include "audamp/common/rng.hpp"
#include "audamp/env/corridor_env.hpp"
#include "audamp/env/floor_plan.hpp"
#include "audamp/eval/controllers.hpp"

namespace audamp::env {
namespace {

// Independent closed-square containment used as an oracle.
bool inside_square(Vec2 p, Vec2 center, double side) {
  return std::abs(p.x - center.x) <= side / 2.0 && std::abs(p.y - center.y) <= side / 2.0;
}

TEST(FloorPlanTest, DefaultAreaMatchesCorridor) {
  const FloorPlan plan = build_floorplan(EnvConfig{});
  EXPECT_NEAR(plan.length * plan.width, 208.54, 0.01);
  EXPECT_NEAR(plan.length, 35.955, 1e-3);
  EXPECT_DOUBLE_EQ(plan.width, 5.8);
}

TEST(FloorPlanTest, DefaultGeometry) {
  const FloorPlan plan = build_floorplan(EnvConfig{});
  const double xs[] = {9.0, 17.0, 25.0};
  for (int i = 0; i < kZoneCount; ++i) {
    const ContentZone& z = plan.zones[static_cast<std::size_t>(i)];
    EXPECT_DOUBLE_EQ(z.center.x, xs[i]);
    EXPECT_DOUBLE_EQ(z.center.y, 2.9);
    EXPECT_EQ(z.index, i);
    EXPECT_DOUBLE_EQ(z.performance_duration, 17.0);
    EXPECT_NEAR(std::pow(2.0 * z.half_side, 2), 2.8, 1e-6);
  }
  EXPECT_EQ(plan.spawn_point, (Vec2{2.0, 2.9}));
  EXPECT_DOUBLE_EQ(plan.exit_x, 33.0);
  EXPECT_DOUBLE_EQ(plan.wall_margin, 0.3);
}

TEST(FloorPlanTest, ZoneCentersAreEightMetersApartOnOneLine) {
  const FloorPlan plan = build_floorplan(EnvConfig{});
  for (int i = 0; i + 1 < kZoneCount; ++i) {
    const Vec2 a = plan.zones[static_cast<std::size_t>(i)].center;
    const Vec2 b = plan.zones[static_cast<std::size_t>(i + 1)].center;
    EXPECT_NEAR(distance(a, b), 8.0, 1e-12);
    EXPECT_DOUBLE_EQ(a.y, b.y);
  }
}

TEST(FloorPlanTest, ZonesAndSpawnFitInside) {
  const FloorPlan plan = build_floorplan(EnvConfig{});
  for (const auto& z : plan.zones) {
    EXPECT_GE(z.center.x - z.half_side, 0.0);
    EXPECT_LE(z.center.x + z.half_side, plan.length);
    EXPECT_GE(z.center.y - z.half_side, 0.0);
    EXPECT_LE(z.center.y + z.half_side, plan.width);
    EXPECT_FALSE(zone_contains(z, plan.spawn_point));
  }
  EXPECT_TRUE(plan.inside(plan.spawn_point));
}

TEST(FloorPlanTest, RejectsZonesThatDoNotFit) {
  EnvConfig config;
  config.zone_spacing = 40.0;
  try {
    build_floorplan(config);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key_path(), "env.zone_spacing");
  }
}

TEST(FloorPlanTest, RejectsOverlappingZones) {
  EnvConfig config;
  config.zone_spacing = 1.0;
  EXPECT_THROW(build_floorplan(config), ConfigError);
}

TEST(ZoneContainsTest, CenterInsideAndOutsidePoint) {
  const FloorPlan plan = build_floorplan(EnvConfig{});
  const ContentZone& z0 = plan.zones[0];
  EXPECT_TRUE(zone_contains(z0, {9.0, 2.9}));
  // sqrt(2.8) / 2 = 0.83666 < 0.9
  ASSERT_LT(std::sqrt(2.8) / 2.0, 0.9);
  EXPECT_FALSE(zone_contains(z0, {9.9, 2.9}));
}

TEST(ZoneContainsTest, BoundaryIsInside) {
  const FloorPlan plan = build_floorplan(EnvConfig{});
  const ContentZone& z0 = plan.zones[0];
  const double half = std::sqrt(2.8) / 2.0;
  EXPECT_TRUE(zone_contains(z0, {9.0 + half, 2.9}));
  EXPECT_TRUE(zone_contains(z0, {9.0 - half, 2.9 + half}));
  EXPECT_FALSE(zone_contains(z0, {9.0 + half + 1e-6, 2.9}));
}

TEST(ZoneContainsTest, AgreesWithSquareOracle) {
  const FloorPlan plan = build_floorplan(EnvConfig{});
  Rng rng(11);
  std::uniform_real_distribution<double> ux(0.0, plan.length), uy(0.0, plan.width);
  for (int i = 0; i < 5000; ++i) {
    const Vec2 p{ux(rng), uy(rng)};
    for (const auto& z : plan.zones) {
      EXPECT_EQ(zone_contains(z, p), inside_square(p, z.center, std::sqrt(2.8)));
    }
  }
}

TEST(WallContactTest, Examples) {
  const FloorPlan plan = build_floorplan(EnvConfig{});
  EXPECT_TRUE(wall_contact(plan, {18.0, 0.2}));
  EXPECT_FALSE(wall_contact(plan, {18.0, 2.9}));
  EXPECT_TRUE(wall_contact(plan, {0.25, 2.9}));
  EXPECT_TRUE(wall_contact(plan, {18.0, 5.6}));
  EXPECT_FALSE(wall_contact(plan, {18.0, 0.3}));
}

TEST(CorridorEnvTest, ResetIsDeterministicPerSeed) {
  CorridorEnv a, b;
  const Observation oa = a.reset(7);
  const Observation ob = b.reset(7);
  EXPECT_EQ(oa, ob);
  EXPECT_EQ(a.state().position, b.state().position);
  EXPECT_EQ(a.state().heading, b.state().heading);
  CorridorEnv c;
  c.reset(8);
  EXPECT_NE(a.state().position, c.state().position);
}

TEST(CorridorEnvTest, ResetPlacesAgentNearSpawnWithClearFlags) {
  CorridorEnv env;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    env.reset(seed);
    EXPECT_LE(distance(env.state().position, {2.0, 2.9}), 0.5 + 1e-12);
    EXPECT_GT(env.state().heading, -std::numbers::pi);
    EXPECT_LE(env.state().heading, std::numbers::pi);
    for (int z = 0; z < kZoneCount; ++z) {
      EXPECT_FALSE(env.state().visited[static_cast<std::size_t>(z)]);
      EXPECT_EQ(env.state().dwell_clock[static_cast<std::size_t>(z)], 0.0);
    }
    EXPECT_EQ(env.state().time, 0.0);
    EXPECT_FALSE(env.state().done);
  }
}

TEST(CorridorEnvTest, KinematicsStraightLine) {
  CorridorEnv env;
  env.reset_to({9.0, 2.9}, 0.0);
  env.step({1.0, 0.0, 0});
  EXPECT_NEAR(env.state().position.x, 9.1, 1e-12);
  EXPECT_NEAR(env.state().position.y, 2.9, 1e-12);
  EXPECT_NEAR(env.state().time, 0.1, 1e-12);
}

TEST(CorridorEnvTest, TurnIsAppliedBeforeTranslation) {
  CorridorEnv env;
  env.reset_to({5.0, 2.0}, 0.0);
  env.step({1.0, 2.0, 0});
  // heading 0.2 rad after the turn, then 0.1 m along it
  EXPECT_NEAR(env.state().heading, 0.2, 1e-12);
  EXPECT_NEAR(env.state().position.x, 5.0 + 0.1 * std::cos(0.2), 1e-12);
  EXPECT_NEAR(env.state().position.y, 2.0 + 0.1 * std::sin(0.2), 1e-12);
}

TEST(CorridorEnvTest, ActionsAreClamped) {
  CorridorEnv env;
  env.reset_to({5.0, 2.9}, 0.0);
  env.step({10.0, 10.0, 0});
  EXPECT_NEAR(env.state().heading, 0.2, 1e-12);  // omega_max 2.0 * 0.1
  EXPECT_NEAR(distance(env.state().position, {5.0, 2.9}), 0.15, 1e-12);  // v_max 1.5 * 0.1
  env.step({-1.0, 0.0, 0});
  EXPECT_NEAR(distance(env.state().position, {5.0, 2.9}), 0.15, 1e-12);
  EXPECT_THROW(env.step({0.0, 0.0, 4}), std::invalid_argument);
}

TEST(CorridorEnvTest, IdleStateDoesNotAffectPose) {
  CorridorEnv a, b;
  a.reset(3);
  b.reset(3);
  for (int k = 0; k < 50; ++k) {
    a.step({0.7, 0.3, 0});
    b.step({0.7, 0.3, k % 4});
  }
  EXPECT_EQ(a.state().position, b.state().position);
  EXPECT_EQ(a.state().heading, b.state().heading);
}

TEST(CorridorEnvTest, FirstEntryFiresOnce) {
  CorridorEnv env;
  env.reset_to({8.1, 2.9}, 0.0);
  // left edge of zone 0 is 9 - 0.8367 = 8.163
  const StepResult first = env.step({1.0, 0.0, 0});
  ASSERT_TRUE(first.events.entered_zone_first_time.has_value());
  EXPECT_EQ(*first.events.entered_zone_first_time, 0);
  EXPECT_EQ(first.events.inside_zone, 0);
  EXPECT_FALSE(first.events.all_zones_just_completed);
  const StepResult second = env.step({0.0, 0.0, 0});
  EXPECT_FALSE(second.events.entered_zone_first_time.has_value());
  EXPECT_TRUE(env.state().visited[0]);
}

TEST(CorridorEnvTest, DwellCreditStopsAtPerformanceDuration) {
  CorridorEnv env;
  env.reset_to({9.0, 2.9}, 0.0);
  double total = 0.0;
  for (int k = 0; k < 170; ++k) total += env.step({}).events.dwell_credit;
  EXPECT_NEAR(total, 17.0, 1e-9);
  EXPECT_NEAR(env.state().dwell_clock[0], 17.0, 1e-9);
  const StepResult after = env.step({});
  EXPECT_EQ(after.events.dwell_credit, 0.0);
  EXPECT_EQ(after.events.inside_zone, 0);
}

TEST(CorridorEnvTest, ProximityProgressTowardNearestUnvisited) {
  CorridorEnv env;
  env.reset_to({4.0, 2.9}, 0.0);
  EXPECT_TRUE(env.step({1.0, 0.0, 0}).events.moved_closer_to_target);
  EXPECT_FALSE(env.step({0.0, 0.0, 0}).events.moved_closer_to_target);
  env.reset_to({4.0, 2.9}, std::numbers::pi);
  EXPECT_FALSE(env.step({1.0, 0.0, 0}).events.moved_closer_to_target);
}

TEST(CorridorEnvTest, ObservationExamples) {
  CorridorEnv env;
  Observation obs = env.reset_to({9.0, 2.9}, 0.3);
  EXPECT_EQ(obs.size(), 16u);
  EXPECT_NEAR(obs[kObsZoneOffsets + 0], 0.0, 1e-15);
  EXPECT_NEAR(obs[kObsZoneOffsets + 1], 0.0, 1e-15);
  EXPECT_NEAR(obs[kObsHeading], std::cos(0.3), 1e-15);
  EXPECT_NEAR(obs[kObsHeading + 1], std::sin(0.3), 1e-15);
  // zone 1 is 8 m straight ahead at heading 0
  obs = env.reset_to({9.0, 2.9}, 0.0);
  const double length = 208.54 / 5.8;
  EXPECT_NEAR(obs[kObsZoneOffsets + 2], 8.0 / length, 1e-12);
  EXPECT_NEAR(obs[kObsZoneOffsets + 3], 0.0, 1e-12);
  EXPECT_NEAR(obs[kObsPosition], 2.0 * 9.0 / length - 1.0, 1e-12);
  EXPECT_NEAR(obs[kObsPosition + 1], 0.0, 1e-12);
  EXPECT_NEAR(obs[kObsWallDistance], 0.5, 1e-12);
  EXPECT_NEAR(obs[kObsWallDistance + 1], 0.5, 1e-12);
  for (double v : obs) EXPECT_LE(std::abs(v), 1.0 + 1e-12);
}

TEST(CorridorEnvTest, ObservationTimeAndVisitedFlags) {
  const EnvConfig config;
  const FloorPlan plan = build_floorplan(config);
  AgentState state;
  state.position = {30.0, 2.9};
  state.time = 120.0;
  state.visited = {true, true, true};
  const Observation obs = observe(plan, config, state);
  EXPECT_DOUBLE_EQ(obs[kObsTime], 0.5);
  for (int z = 0; z < kZoneCount; ++z) EXPECT_EQ(obs[kObsVisited + z], 1.0);

  CorridorEnv env;
  env.reset_to({30.0, 2.9}, 0.0);
  for (int k = 0; k < 1200; ++k) env.step({});
  EXPECT_NEAR(env.observe()[kObsTime], 0.5, 1e-12);
}

TEST(CorridorEnvTest, EpisodeEndsAtHorizon) {
  CorridorEnv env;
  EXPECT_EQ(env.max_steps(), static_cast<std::int64_t>(std::ceil(240.0 / 0.1 - 1e-9)));
  EXPECT_EQ(env.max_steps(), 2400);
  env.reset(1);
  std::int64_t steps = 0;
  while (!env.state().done) {
    env.step({});
    ++steps;
  }
  EXPECT_EQ(steps, 2400);
  EXPECT_NEAR(env.state().time, 240.0, 1e-9);
  EXPECT_THROW(env.step({}), Error);
}

TEST(CorridorEnvTest, StepBeforeResetFails) {
  CorridorEnv env;
  EXPECT_THROW(env.step({}), Error);
}

TEST(CorridorEnvTest, EpisodeEndsPastExitAfterAllZones) {
  CorridorEnv env;
  env.reset_to({8.5, 2.9}, 0.0);
  bool completed = false;
  int completions = 0;
  while (!env.state().done) {
    const StepResult r = env.step({1.5, 0.0, 0});
    completions += r.events.all_zones_just_completed ? 1 : 0;
    completed = completed || r.events.all_zones_just_completed;
  }
  EXPECT_TRUE(completed);
  EXPECT_EQ(completions, 1);
  EXPECT_GT(env.state().position.x, 33.0);
  EXPECT_LT(env.step_count(), env.max_steps());
}

// Random actions exercise containment, dwell conservation, first-entry
// uniqueness and determinism together.
TEST(CorridorEnvTest, RandomEpisodeInvariants) {
  const EnvConfig config;
  const FloorPlan plan = build_floorplan(config);
  const double side = std::sqrt(config.zone_area);
  eval::RandomController random;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    CorridorEnv env(config);
    std::array<double, kZoneCount> credited{};
    std::array<int, kZoneCount> entries{};
    std::vector<StepEvents> events;
    const Trajectory traj = run_episode(env, random, seed, [&](const StepResult& r) {
      events.push_back(r.events);
      if (r.events.inside_zone) credited[static_cast<std::size_t>(*r.events.inside_zone)] += r.events.dwell_credit;
      if (r.events.entered_zone_first_time) ++entries[static_cast<std::size_t>(*r.events.entered_zone_first_time)];
      EXPECT_LE(r.events.dwell_credit, r.events.dt + 1e-15);
    });
    EXPECT_LE(static_cast<std::int64_t>(traj.samples.size()) - 1, 2400);

    std::array<double, kZoneCount> time_inside{};
    for (std::size_t k = 1; k < traj.samples.size(); ++k) {
      const Vec2 p = traj.samples[k].position;
      EXPECT_TRUE(plan.inside(p));
      for (int z = 0; z < kZoneCount; ++z) {
        if (inside_square(p, plan.zones[static_cast<std::size_t>(z)].center, side)) {
          time_inside[static_cast<std::size_t>(z)] += config.dt;
        }
      }
    }
    for (int z = 0; z < kZoneCount; ++z) {
      const auto zi = static_cast<std::size_t>(z);
      EXPECT_NEAR(credited[zi], std::min(time_inside[zi], 17.0), 1e-9);
      EXPECT_EQ(entries[zi], time_inside[zi] > 0.0 ? 1 : 0);
    }

    // Replaying the same seed and actions reproduces every event bit for bit.
    CorridorEnv replay(config);
    std::size_t k = 0;
    const Trajectory again = run_episode(replay, random, seed, [&](const StepResult& r) {
      ASSERT_LT(k, events.size());
      EXPECT_EQ(r.events.dwell_credit, events[k].dwell_credit);
      EXPECT_EQ(r.events.entered_zone_first_time, events[k].entered_zone_first_time);
      EXPECT_EQ(r.events.moved_closer_to_target, events[k].moved_closer_to_target);
      EXPECT_EQ(r.events.wall_contact, events[k].wall_contact);
      ++k;
    });
    EXPECT_EQ(again.samples, traj.samples);
  }
}

TEST(CorridorEnvTest, NearestUnvisitedZone) {
  const FloorPlan plan = build_floorplan(EnvConfig{});
  EXPECT_EQ(nearest_unvisited_zone(plan, {false, false, false}, {2.0, 2.9}), 0);
  EXPECT_EQ(nearest_unvisited_zone(plan, {true, false, false}, {2.0, 2.9}), 1);
  EXPECT_EQ(nearest_unvisited_zone(plan, {false, false, false}, {24.0, 2.9}), 2);
  EXPECT_EQ(nearest_unvisited_zone(plan, {true, true, true}, {24.0, 2.9}), -1);
}

}  // namespace
}  // namespace audamp::env
