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
#include <sstream>

#include <gtest/gtest.h>

#include "audamp/common/error.hpp"
#include "audamp/imitation/behavior_cloning.hpp"
#include "audamp/imitation/demo_dataset.hpp"
#include "audamp/imitation/demo_io.hpp"
#include "audamp/imitation/oracle_teacher.hpp"
#include "audamp/policy/distributions.hpp"
#include "test_support.hpp"

namespace audamp::imitation {
namespace {

const env::EnvConfig kConfig;

const DemoDataset& demos60() {
  static const DemoDataset demos = generate_oracle_demos(kConfig, 60, 1);
  return demos;
}

env::Trajectory track(std::initializer_list<env::TrajectorySample> samples) {
  env::Trajectory t;
  t.samples = samples;
  return t;
}

TEST(OracleDemosTest, EveryEpisodeWatchesEveryZone) {
  const DemoDataset& demos = demos60();
  const auto plan = env::build_floorplan(kConfig);
  ASSERT_EQ(demos.episodes.size(), 60u);
  EXPECT_DOUBLE_EQ(demos.sample_dt, 0.1);
  for (const auto& ep : demos.episodes) {
    EXPECT_LE(ep.samples.back().t - ep.samples.front().t, 240.0 + 1e-9);
    EXPECT_TRUE(env::inside_corridor(ep, plan));
    // Time inside each zone, counted from the positions alone.
    std::array<double, env::kZoneCount> inside{};
    for (std::size_t k = 1; k < ep.samples.size(); ++k) {
      const int z = env::zone_at(plan, ep.samples[k].position);
      if (z >= 0) inside[static_cast<std::size_t>(z)] += ep.samples[k].t - ep.samples[k - 1].t;
    }
    for (double s : inside) EXPECT_GE(s, 17.0 - 1e-9);
    EXPECT_GE(ep.samples.back().position.x, kConfig.exit_x - 1e-9);
  }
  EXPECT_NO_THROW(validate_dataset(demos, kConfig));
}

TEST(OracleDemosTest, SameSeedSameDataset) {
  const DemoDataset a = generate_oracle_demos(kConfig, 3, 7);
  const DemoDataset b = generate_oracle_demos(kConfig, 3, 7);
  const DemoDataset c = generate_oracle_demos(kConfig, 3, 8);
  EXPECT_EQ(a.episodes, b.episodes);
  EXPECT_NE(a.episodes, c.episodes);
}

TEST(OracleDemosTest, DurationMatchesEpisodeConstruction) {
  // Independent estimate of one episode: walk spawn -> three zones -> exit at
  // the mean speed, watch each performance plus the mean extra dwell.
  const OracleOptions options;
  const double walk = kConfig.exit_x - kConfig.spawn_point.x;
  const double mean_speed = 0.5 * (options.min_speed + options.max_speed);
  const double per_episode = walk / mean_speed + 3.0 * (kConfig.performance_duration + 0.5 * options.max_extra_dwell);
  const double expected = 60.0 * per_episode;
  const double total = demos60().total_duration();
  EXPECT_GE(total, 0.5 * expected);
  EXPECT_LE(total, 1.5 * expected);
  double summed = 0.0;
  for (const auto& ep : demos60().episodes) summed += ep.samples.back().t - ep.samples.front().t;
  EXPECT_NEAR(total, summed, 1e-9);
}

TEST(DeriveActionsTest, Examples) {
  const auto straight = derive_actions(track({{0.0, {0.0, 0.0}, 0.0, 0}, {0.1, {0.1, 0.0}, 0.0, 2}}), kConfig);
  ASSERT_EQ(straight.size(), 1u);
  EXPECT_NEAR(straight[0].speed, 1.0, 1e-12);
  EXPECT_EQ(straight[0].turn_rate, 0.0);
  EXPECT_EQ(straight[0].idle_state, 2);

  const auto still = derive_actions(track({{0.0, {1.0, 1.0}, 0.5, 0}, {0.1, {1.0, 1.0}, 0.5, 0}}), kConfig);
  EXPECT_EQ(still[0].speed, 0.0);

  const auto sharp = derive_actions(track({{0.0, {1.0, 1.0}, 0.0, 0}, {0.1, {1.0, 1.0}, 0.3, 0}}), kConfig);
  EXPECT_EQ(sharp[0].turn_rate, 2.0);

  // Heading change across the +-pi seam is wrapped before dividing by dt.
  const auto seam = derive_actions(track({{0.0, {1.0, 1.0}, 3.1, 0}, {0.1, {1.0, 1.0}, -3.1, 0}}), kConfig);
  EXPECT_NEAR(seam[0].turn_rate, (2.0 * std::numbers::pi - 6.2) / 0.1, 1e-9);
}

TEST(DeriveActionsTest, RejectsNonUniformTimestamps) {
  EXPECT_THROW(derive_actions(track({{0.0, {0, 0}, 0, 0}, {0.1, {0, 0}, 0, 0}, {0.25, {0, 0}, 0, 0}}), kConfig),
               Error);
}

TEST(DeriveActionsTest, ReintegrationReproducesOracleTracks) {
  for (std::size_t e = 0; e < 10; ++e) {
    const env::Trajectory& ep = demos60().episodes[e];
    const auto actions = derive_actions(ep, kConfig);
    const auto positions = integrate_actions(ep, actions, kConfig);
    ASSERT_EQ(positions.size(), ep.samples.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < positions.size(); ++k) worst = std::max(worst, distance(positions[k], ep.samples[k].position));
    EXPECT_LE(worst, 0.5) << "episode " << e;
    for (const auto& a : actions) {
      EXPECT_GE(a.speed, 0.0);
      EXPECT_LE(a.speed, kConfig.v_max);
      EXPECT_LE(std::abs(a.turn_rate), kConfig.omega_max);
    }
  }
}

TEST(DemoIoTest, JsonlRoundTrip) {
  const auto& episodes = generate_oracle_demos(kConfig, 2, 3).episodes;
  std::stringstream buffer;
  write_jsonl(buffer, episodes);
  const auto loaded = read_jsonl(buffer);
  ASSERT_EQ(loaded.size(), episodes.size());
  for (std::size_t e = 0; e < episodes.size(); ++e) {
    ASSERT_EQ(loaded[e].samples.size(), episodes[e].samples.size());
    for (std::size_t k = 0; k < loaded[e].samples.size(); ++k) {
      EXPECT_EQ(loaded[e].samples[k].t, episodes[e].samples[k].t);
      EXPECT_EQ(loaded[e].samples[k].position, episodes[e].samples[k].position);
      EXPECT_EQ(loaded[e].samples[k].heading, episodes[e].samples[k].heading);
      EXPECT_EQ(loaded[e].samples[k].idle_state, episodes[e].samples[k].idle_state);
    }
  }
}

TEST(DemoIoTest, MissingHeadingAndIdleAreDerived) {
  std::istringstream in(
      "{\"ep\":4,\"t\":0.0,\"x\":1.0,\"y\":1.0}\n"
      "{\"ep\":4,\"t\":0.1,\"x\":1.0,\"y\":1.1}\n"
      "{\"ep\":4,\"t\":0.2,\"x\":1.0,\"y\":1.2}\n");
  const auto loaded = read_jsonl(in);
  ASSERT_EQ(loaded.size(), 1u);
  EXPECT_EQ(loaded[0].episode_id, 4);
  for (const auto& s : loaded[0].samples) {
    EXPECT_NEAR(s.heading, std::numbers::pi / 2.0, 1e-9);
    EXPECT_EQ(s.idle_state, 0);
  }
}

TEST(DemoIoTest, MalformedLineReportsLineNumber) {
  std::istringstream in("{\"ep\":0,\"t\":0.0,\"x\":1.0,\"y\":1.0}\n{\"ep\":0,\"t\":0.1,\"x\":1.0}\n");
  try {
    read_jsonl(in);
    FAIL() << "expected Error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos) << e.what();
  }
}

TEST(DemoIoTest, CsvHeaderAndRows) {
  env::Trajectory t = track({{0.0, {1.5, 2.0}, 0.25, 0}, {0.1, {1.6, 2.0}, 0.25, 3}});
  t.episode_id = 9;
  std::ostringstream out;
  write_csv(out, std::span<const env::Trajectory>(&t, 1));
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "ep,t,x,y,h,idle");
  int rows = 0;
  while (std::getline(lines, line)) {
    EXPECT_EQ(line.substr(0, 2), "9,");
    ++rows;
  }
  EXPECT_EQ(rows, 2);
}

TEST(ValidateDatasetTest, RejectsPositionsOutsideTheCorridor) {
  DemoDataset d;
  d.sample_dt = 0.1;
  d.episodes.push_back(track({{0.0, {1.0, 1.0}, 0, 0}, {0.1, {1.0, -0.2}, 0, 0}}));
  EXPECT_THROW(validate_dataset(d, kConfig), Error);
}

// Loss examples ----------------------------------------------------------------

// Parameters whose heads ignore the trunk: the mean is its bias and the idle
// logits are their bias.
policy::PolicyParams constant_heads(std::array<double, 2> mean, std::array<double, 4> logits) {
  policy::PolicyParams p;
  p.set_zero();
  for (int j = 0; j < 2; ++j) p.mean_bias()(j) = mean[static_cast<std::size_t>(j)];
  for (int k = 0; k < 4; ++k) p.logits_bias()(k) = logits[static_cast<std::size_t>(k)];
  return p;
}

std::vector<LabeledTransition> batch_with(env::Action action, int n) {
  std::vector<LabeledTransition> batch;
  for (const auto& obs : testing::sample_observations(n, 5)) batch.push_back({obs, action});
  return batch;
}

TEST(BcLossTest, PerfectPredictionHasZeroLoss) {
  // Params are float-valued, so pick exactly representable actions; a logit
  // gap of 60 leaves the cross-entropy below 1e-25.
  const auto p = constant_heads({0.75, -0.5}, {0.0, 0.0, 60.0, 0.0});
  EXPECT_NEAR(bc_loss(p, batch_with({0.75, -0.5, 2}, 4), policy::ActionLimits{}), 0.0, 1e-20);
}

TEST(BcLossTest, UniformIdleHeadCostsLnFour) {
  const auto p = constant_heads({0.75, -0.5}, {0.0, 0.0, 0.0, 0.0});
  EXPECT_NEAR(bc_loss(p, batch_with({0.75, -0.5, 1}, 4), policy::ActionLimits{}), std::log(4.0), 1e-12);
}

TEST(BcLossTest, ContinuousErrorIsRangeNormalized) {
  const auto p = constant_heads({0.0, 0.0}, {0.0, 0.0, 0.0, 0.0});
  // speed range [0, 1.5] -> half range 0.75; turn range [-2, 2] -> half range 2.
  const double expected = std::pow(0.75 / 0.75, 2) + std::pow(1.0 / 2.0, 2) + std::log(4.0);
  EXPECT_NEAR(bc_loss(p, batch_with({0.75, 1.0, 0}, 3), policy::ActionLimits{}), expected, 1e-12);
}

TEST(BcLossTest, DuplicatingTheBatchKeepsTheMean) {
  const policy::PolicyParams p = policy::init_params(3, {}, {1.414, 1.0, 1.0, 0.0});
  std::vector<LabeledTransition> batch;
  const auto obs = testing::sample_observations(5, 9);
  for (std::size_t i = 0; i < obs.size(); ++i) batch.push_back({obs[i], {0.2 * static_cast<double>(i), -0.3, static_cast<int>(i % 4)}});
  auto doubled = batch;
  doubled.insert(doubled.end(), batch.begin(), batch.end());
  EXPECT_NEAR(bc_loss(p, batch, policy::ActionLimits{}), bc_loss(p, doubled, policy::ActionLimits{}), 1e-12);
}

TEST(BcTrainTest, ZeroEpochsLeavesParametersUnchanged) {
  const policy::PolicyParams init = policy::init_params(4);
  BcConfig config;
  config.epochs = 0;
  const BcResult r = bc_train(init, generate_oracle_demos(kConfig, 4, 2), kConfig, config);
  EXPECT_EQ(r.params, init);
  ASSERT_EQ(r.curve.size(), 1u);
  EXPECT_EQ(r.curve[0].epoch, 0);
}

TEST(BcTrainTest, SplitIsSeededAndByEpisode) {
  const DemoDataset demos = generate_oracle_demos(kConfig, 10, 2);
  const auto a = split_transitions(demos, kConfig, 0.2, 5);
  const auto b = split_transitions(demos, kConfig, 0.2, 5);
  std::size_t total = 0;
  for (const auto& ep : demos.episodes) total += ep.samples.size() - 1;
  EXPECT_EQ(a.first.size() + a.second.size(), total);
  EXPECT_EQ(a.first.size(), b.first.size());
  EXPECT_GT(a.second.size(), 0u);
}

TEST(BcTrainTest, HeldOutErrorFallsOverFirstEpochs) {
  BcConfig config;
  config.epochs = 5;
  const BcResult a = bc_train(policy::init_params(11), demos60(), kConfig, config);
  ASSERT_EQ(a.curve.size(), 6u);
  for (std::size_t e = 1; e < a.curve.size(); ++e) {
    EXPECT_LT(a.curve[e].heldout_mse, a.curve[e - 1].heldout_mse) << "epoch " << e;
  }
  // Same seed, same curve.
  const BcResult b = bc_train(policy::init_params(11), demos60(), kConfig, config);
  for (std::size_t e = 0; e < a.curve.size(); ++e) {
    EXPECT_EQ(a.curve[e].train_loss, b.curve[e].train_loss);
    EXPECT_EQ(a.curve[e].heldout_loss, b.curve[e].heldout_loss);
  }
  EXPECT_EQ(a.params, b.params);
}

TEST(BcTrainTest, FittedScaleMatchesResiduals) {
  BcConfig config;
  config.epochs = 1;
  const DemoDataset demos = generate_oracle_demos(kConfig, 6, 4);
  const BcResult r = bc_train(policy::init_params(2), demos, kConfig, config);
  const auto [train, heldout] = split_transitions(demos, kConfig, config.holdout_fraction, config.seed);
  for (int d = 0; d < 2; ++d) {
    double sq = 0.0;
    for (const auto& t : train) {
      const double m = policy::forward(r.params, t.observation).mean[static_cast<std::size_t>(d)];
      const double a = d == 0 ? t.action.speed : t.action.turn_rate;
      sq += (a - m) * (a - m);
    }
    const double rms = std::sqrt(sq / static_cast<double>(train.size()));
    EXPECT_NEAR(std::exp(r.params.log_std()(d)), rms, 1e-6 * rms) << d;
  }
}

}  // namespace
}  // namespace audamp::imitation
