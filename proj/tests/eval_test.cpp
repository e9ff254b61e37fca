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
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "audamp/common/error.hpp"
#include "audamp/eval/controllers.hpp"
#include "audamp/eval/evaluator.hpp"
#include "audamp/eval/motion.hpp"
#include "audamp/eval/svg.hpp"
#include "audamp/eval/troupe.hpp"
#include "audamp/imitation/oracle_teacher.hpp"
#include "audamp/reward/reward.hpp"

namespace audamp::eval {
namespace {

TEST(MotionTest, ThresholdExamples) {
  EXPECT_EQ(classify_motion(1.2, 0.0, 0).kind, MotionKind::kWalking);
  EXPECT_EQ(classify_motion(0.05, 1.0, 0).kind, MotionKind::kTurning);
  EXPECT_EQ(classify_motion(0.05, -0.5, 0).kind, MotionKind::kTurning);
  EXPECT_EQ(classify_motion(0.0, 0.0, 2), (MotionLabel{MotionKind::kIdle, 2}));
  EXPECT_EQ(classify_motion(0.1, 0.0, 1).kind, MotionKind::kWalking);
  EXPECT_EQ(classify_motion(0.0999, 0.4999, 3), (MotionLabel{MotionKind::kIdle, 3}));
  EXPECT_EQ(to_string(classify_motion(0.0, 0.0, 2)), "idle-2");
  EXPECT_EQ(to_string(classify_motion(1.0, 0.0, 2)), "walking");
  EXPECT_EQ(to_string(classify_motion(0.0, 1.0, 2)), "turning");
}

TEST(MotionTest, LabelsFromTrack) {
  env::Trajectory t;
  t.samples = {{0.0, {1.0, 1.0}, 0.0, 0},
               {0.1, {1.12, 1.0}, 0.0, 0},   // 1.2 m/s
               {0.2, {1.12, 1.0}, 0.1, 0},   // turn 1 rad/s in place
               {0.3, {1.12, 1.0}, 0.1, 3}};  // still
  const auto labels = label_motion_states(t);
  ASSERT_EQ(labels.size(), 3u);
  EXPECT_EQ(labels[0].kind, MotionKind::kWalking);
  EXPECT_EQ(labels[1].kind, MotionKind::kTurning);
  EXPECT_EQ(labels[2], (MotionLabel{MotionKind::kIdle, 3}));
  const MotionProfile p = motion_profile(labels);
  EXPECT_NEAR(p.walking + p.turning + p.idle, 1.0, 1e-12);
  EXPECT_NEAR(p.idle_substates[3], 1.0 / 3.0, 1e-12);
  t.samples[2].t = 0.25;
  EXPECT_THROW(label_motion_states(t), Error);
}

TEST(DispersionTest, Examples) {
  const std::vector<Vec2> two{{0, 0}, {2, 0}};
  EXPECT_DOUBLE_EQ(dispersion(two), 2.0);
  const std::vector<Vec2> same(6, Vec2{3.0, 1.0});
  EXPECT_EQ(dispersion(same), 0.0);
  const std::vector<Vec2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  double pairs = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) pairs += distance(square[i], square[j]);
  EXPECT_NEAR(dispersion(square), pairs / 6.0, 1e-15);
  EXPECT_NEAR(dispersion(square), 1.1381, 1e-4);
  EXPECT_EQ(dispersion(std::vector<Vec2>{{4, 4}}), 0.0);
  EXPECT_THROW(dispersion(std::vector<Vec2>{}), Error);
}

TEST(NpcBaselineTest, PlacementAndHeadings) {
  const env::EnvConfig config;
  const auto plan = env::build_floorplan(config);
  const TroupeRun npc = npc_baseline(config);
  ASSERT_EQ(npc.n_agents, 6);
  for (int a = 0; a < 6; ++a) {
    const auto& zone = plan.zones[static_cast<std::size_t>(a / 2)];
    const auto& s = npc.agents[static_cast<std::size_t>(a)].samples.front();
    EXPECT_NEAR(distance(s.position, zone.center), 1.5, 1e-12);
    const Vec2 to_center = zone.center - s.position;
    EXPECT_NEAR(wrap_angle(std::atan2(to_center.y, to_center.x) - s.heading), 0.0, 1e-9);
    EXPECT_TRUE(plan.inside(s.position));
  }
  const MotionProfile profile = motion_profile(npc.agents);
  EXPECT_EQ(profile.idle, 1.0);
  // Static crowd: the dispersion series is constant.
  ASSERT_FALSE(npc.dispersion.empty());
  for (double d : npc.dispersion) EXPECT_NEAR(d, npc.dispersion.front(), 1e-12);
  std::vector<Vec2> positions;
  for (const auto& a : npc.agents) positions.push_back(a.samples.front().position);
  EXPECT_NEAR(npc.mean_dispersion(), dispersion(positions), 1e-12);
}

TEST(TroupeTest, StaggeredSpawnsAndDeterminism) {
  const policy::PolicyParams p = policy::init_params(3);
  const env::EnvConfig config;
  const TroupeRun a = simulate_troupe(p, config, 6, 11);
  const TroupeRun b = simulate_troupe(p, config, 6, 11);
  ASSERT_EQ(a.agents.size(), 6u);
  for (int k = 0; k < 6; ++k) {
    EXPECT_NEAR(a.spawn_times[static_cast<std::size_t>(k)], 3.0 * k, 1e-12);
    EXPECT_NEAR(a.agents[static_cast<std::size_t>(k)].samples.front().t, 3.0 * k, 1e-9);
  }
  EXPECT_EQ(a.agents, b.agents);
  EXPECT_EQ(a.dispersion, b.dispersion);
}

TEST(TroupeTest, DispersionSeriesMatchesPresentAgents) {
  const policy::PolicyParams p = policy::init_params(3);
  const TroupeRun run = simulate_troupe(p, {}, 3, 2);
  // Recompute one instant by hand from the agents present at that time.
  const std::size_t k = 70;  // t = 7 s: all three agents have spawned
  std::vector<Vec2> present;
  for (const auto& agent : run.agents) {
    for (const auto& s : agent.samples) {
      if (std::abs(s.t - run.dt * static_cast<double>(k)) < 1e-6) present.push_back(s.position);
    }
  }
  ASSERT_EQ(present.size(), 3u);
  EXPECT_NEAR(run.dispersion[k], dispersion(present), 1e-12);
  EXPECT_EQ(run.dispersion[0], 0.0);  // one agent at t = 0
}

TEST(TroupeTest, SingleAgentHasZeroDispersion) {
  const TroupeRun run = simulate_troupe(policy::init_params(3), {}, 1, 4);
  for (double d : run.dispersion) EXPECT_EQ(d, 0.0);
  EXPECT_EQ(run.mean_dispersion(), 0.0);
}

void expect_consistent(const EvaluationRun& run, const env::EnvConfig& config) {
  const EvalReport& r = run.report;
  const auto& c = r.mean_components;
  EXPECT_NEAR(c.entry + c.completion + c.dwell + c.shaping + c.penalty, r.mean_reward, 1e-9);
  EXPECT_NEAR(r.walking_fraction + r.idle_fraction + r.turning_fraction, 1.0, 1e-9);
  for (double f : {r.completion_rate, r.wall_contact_fraction, r.walking_fraction, r.idle_fraction}) {
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
  const auto plan = env::build_floorplan(config);
  for (std::size_t e = 0; e < run.trajectories.size(); ++e) {
    const auto replayed = reward::replay_rewards(run.trajectories[e], plan, reward::RewardConfig{});
    EXPECT_NEAR(replayed.total(), run.ledgers[e].cumulative_reward, 1e-9) << e;
  }
}

TEST(EvaluatorTest, OracleCompletesEverything) {
  const env::EnvConfig config;
  imitation::OracleTeacher teacher;
  const EvaluationRun run = evaluate_controller(teacher, config, {}, 10, 3);
  EXPECT_EQ(run.report.n_episodes, 10);
  EXPECT_EQ(run.report.completion_rate, 1.0);
  for (double d : run.report.mean_dwell) EXPECT_GE(d, 17.0 - 1e-9);
  EXPECT_NEAR(run.report.mean_components.entry + run.report.mean_components.completion, 238.4, 1e-9);
  EXPECT_GT(run.report.idle_fraction, 0.2);
  expect_consistent(run, config);
}

TEST(EvaluatorTest, RandomPolicyRarelyCompletes) {
  const env::EnvConfig config;
  RandomController random;
  const EvaluationRun run = evaluate_controller(random, config, {}, 50, 999);
  EXPECT_LE(run.report.completion_rate, 0.05);
  expect_consistent(run, config);
}

TEST(EvaluatorTest, PolicyEvaluationIsDeterministic) {
  const policy::PolicyParams p = policy::init_params(7, {}, {1.414, 1.0, 1.0, 0.0});
  const EvaluationRun a = evaluate_policy(p, {}, {}, 3, 5);
  const EvaluationRun b = evaluate_policy(p, {}, {}, 3, 5);
  EXPECT_EQ(a.trajectories, b.trajectories);
  EXPECT_EQ(to_json(a.report).dump(), to_json(b.report).dump());
  expect_consistent(a, {});
}

TEST(SvgTest, OnePolylinePerTrajectory) {
  imitation::OracleTeacher teacher;
  const EvaluationRun run = evaluate_controller(teacher, {}, {}, 2, 1);
  std::ostringstream out;
  write_svg(out, env::build_floorplan({}), run.trajectories);
  const std::string svg = out.str();
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  std::size_t polylines = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++polylines;
  EXPECT_EQ(polylines, 2u);
}

}  // namespace
}  // namespace audamp::eval
