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

#include "audamp/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "audamp/common/error.hpp"
#include "audamp/common/logging.hpp"
#include "audamp/eval/evaluator.hpp"
#include "audamp/eval/motion.hpp"
#include "audamp/eval/svg.hpp"
#include "audamp/eval/troupe.hpp"
#include "audamp/imitation/demo_io.hpp"
#include "audamp/policy/checkpoint.hpp"

namespace audamp::cli {

namespace fs = std::filesystem;

namespace {

RunConfig resolve_config(const std::string& path) {
  if (path.empty()) {
    RunConfig config;
    config.validate();
    return config;
  }
  return load_config(path);
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  return out;
}

imitation::DemoDataset load_demos(const RunConfig& config) {
  if (config.paths.demo_file.empty()) {
    return imitation::generate_oracle_demos(config.env, config.bc.demo_episodes, config.bc.demo_seed);
  }
  imitation::DemoDataset demos;
  demos.episodes = imitation::read_jsonl_file(config.paths.demo_file);
  demos.sample_dt = config.env.dt;
  demos.source = imitation::DemoSource::kImported;
  imitation::validate_dataset(demos, config.env);
  return demos;
}

void write_bc_curve(const fs::path& path, const std::vector<imitation::BcEpochStats>& curve) {
  auto out = open_output(path);
  out << "epoch,train_loss,heldout_loss,heldout_mse,heldout_idle_accuracy\n";
  for (const auto& s : curve) {
    out << fmt::format("{},{},{},{},{}\n", s.epoch, s.train_loss, s.heldout_loss, s.heldout_mse,
                       s.heldout_idle_accuracy);
  }
}

struct GenDemosArgs {
  int n = 60;
  std::uint64_t seed = 1;
  std::string out;
  std::string config;
};

int gen_demos(const GenDemosArgs& a, std::ostream& out) {
  const RunConfig config = resolve_config(a.config);
  if (a.n < 1) throw ConfigError("n", "--n must be >= 1");
  const auto demos = imitation::generate_oracle_demos(config.env, a.n, a.seed);
  const fs::path path(a.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  imitation::write_jsonl_file(path, demos.episodes);
  out << fmt::format("wrote {} episodes ({:.3f} h) to {}\n", demos.episodes.size(),
                     demos.total_duration() / 3600.0, path.string());
  return kExitOk;
}

struct TrainArgs {
  std::string config;
  int candidates = 10;
};

int train(const TrainArgs& a, std::ostream& out) {
  const RunConfig config = resolve_config(a.config);
  if (a.candidates < 1) throw ConfigError("candidates", "--candidates must be >= 1");
  const fs::path echoed = echo_config(config, config.paths.log_dir);
  logger()->info("resolved config written to {}", echoed.string());

  const imitation::DemoDataset demos = load_demos(config);
  const auto results = ppo::train_candidates(config.ppo, config.env, config.reward, config.bc.config, &demos,
                                             a.candidates, config.paths.checkpoint_dir, config.net.init);
  if (!results.empty() && !results.front().bc_curve.empty()) {
    write_bc_curve(config.paths.log_dir / "bc_curve.csv", results.front().bc_curve);
  }
  for (std::size_t id = 0; id < results.size(); ++id) {
    const auto curve_path = config.paths.log_dir / fmt::format("curve_{:02d}.csv", id);
    auto curve_out = open_output(curve_path);
    ppo::write_curve_csv(curve_out, results[id].curve);
    out << fmt::format("candidate {} steps {} checkpoint {} curve {}\n", id, results[id].env_steps,
                       results[id].checkpoints.back().string(), curve_path.string());
  }
  return kExitOk;
}

struct SelectArgs {
  std::string checkpoints;
  std::optional<double> fraction;
  std::optional<int> episodes;
  std::optional<std::uint64_t> seed;
  std::string config;
};

int select(const SelectArgs& a, std::ostream& out) {
  RunConfig config = resolve_config(a.config);
  if (a.fraction) config.eval.selection_fraction = *a.fraction;
  if (a.episodes) config.eval.selection_episodes = *a.episodes;
  if (a.seed) config.eval.selection_seed = *a.seed;
  config.validate();

  const auto ranked = rank_checkpoints(a.checkpoints, config);
  const auto selected = ppo::select_models(ranked, config.eval.selection_fraction);

  nlohmann::ordered_json report;
  report["fraction"] = config.eval.selection_fraction;
  report["episodes"] = config.eval.selection_episodes;
  report["seed"] = config.eval.selection_seed;
  auto& all = report["candidates"] = nlohmann::ordered_json::array();
  for (const auto& c : ranked) {
    all.push_back({{"model_id", c.model_id}, {"checkpoint", c.checkpoint.string()}, {"mean_reward", c.mean_reward}});
  }
  auto& ids = report["selected"] = nlohmann::ordered_json::array();
  for (const auto& c : selected) ids.push_back(c.model_id);
  open_output(fs::path(a.checkpoints) / "selection.json") << report.dump(2) << "\n";

  for (const auto& c : selected) {
    out << fmt::format("{} {:.4f} {}\n", c.model_id, c.mean_reward, c.checkpoint.string());
  }
  return kExitOk;
}

struct EvalArgs {
  std::string checkpoint;
  std::optional<int> episodes;
  std::optional<std::uint64_t> seed;
  bool stochastic = false;
  std::string config;
  std::string report;
  std::string trajectories;
};

int evaluate(const EvalArgs& a, std::ostream& out) {
  RunConfig config = resolve_config(a.config);
  if (a.episodes) config.eval.episodes = *a.episodes;
  if (a.seed) config.eval.seed = *a.seed;
  config.validate();
  const auto ckpt = policy::load_checkpoint(a.checkpoint);
  const auto run = eval::evaluate_policy(ckpt.params, config.env, config.reward, config.eval.episodes,
                                         config.eval.seed, a.stochastic || config.eval.stochastic);
  const std::string json = eval::to_json(run.report).dump(2);
  if (!a.report.empty()) open_output(a.report) << json << "\n";
  if (!a.trajectories.empty()) imitation::write_jsonl_file(a.trajectories, run.trajectories);
  out << json << "\n";
  return kExitOk;
}

struct TroupeArgs {
  std::string checkpoint;
  std::optional<int> agents;
  std::optional<std::uint64_t> seed;
  bool stochastic = false;
  std::string config;
  std::string trajectories;
  std::string svg;
};

int troupe(const TroupeArgs& a, std::ostream& out) {
  RunConfig config = resolve_config(a.config);
  if (a.agents) config.eval.troupe_agents = *a.agents;
  if (a.seed) config.eval.troupe_seed = *a.seed;
  config.validate();
  const auto ckpt = policy::load_checkpoint(a.checkpoint);
  const eval::TroupeOptions options{config.eval.spawn_stagger, a.stochastic || config.eval.stochastic};
  const auto run =
      eval::simulate_troupe(ckpt.params, config.env, config.eval.troupe_agents, config.eval.troupe_seed, options);
  const auto npc = eval::npc_baseline(config.env, config.eval.npc_standoff);
  const auto profile = eval::motion_profile(run.agents);

  nlohmann::ordered_json report;
  report["n_agents"] = run.n_agents;
  report["spawn_times"] = run.spawn_times;
  report["mean_dispersion"] = run.mean_dispersion();
  report["npc_mean_dispersion"] = npc.mean_dispersion();
  report["exceeds_npc"] = run.mean_dispersion() > npc.mean_dispersion();
  report["motion_fractions"] = {
      {"walking", profile.walking}, {"idle", profile.idle}, {"turning", profile.turning}};
  report["idle_substates"] = profile.idle_substates;
  if (!a.trajectories.empty()) imitation::write_jsonl_file(a.trajectories, run.agents);
  if (!a.svg.empty()) {
    auto svg_out = open_output(a.svg);
    eval::write_svg(svg_out, env::build_floorplan(config.env), run.agents);
  }
  out << report.dump(2) << "\n";
  return kExitOk;
}

struct ExportArgs {
  std::string trajectory;
  std::string format;
  std::string out;
  std::string config;
};

int export_trajectory(const ExportArgs& a, std::ostream& out) {
  const RunConfig config = resolve_config(a.config);
  const auto trajectories = imitation::read_jsonl_file(a.trajectory);
  std::ofstream file;
  if (!a.out.empty()) file = open_output(a.out);
  std::ostream& sink = a.out.empty() ? out : file;
  if (a.format == "csv") {
    imitation::write_csv(sink, trajectories);
  } else if (a.format == "jsonl") {
    imitation::write_jsonl(sink, trajectories);
  } else {
    eval::write_svg(sink, env::build_floorplan(config.env), trajectories);
  }
  return kExitOk;
}

}  // namespace

std::vector<ppo::Candidate> rank_checkpoints(const fs::path& dir, const RunConfig& config) {
  if (!fs::is_directory(dir)) throw Error(fmt::format("checkpoint directory {} not found", dir.string()));
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.starts_with("candidate_") && entry.path().extension() == ".ckpt") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) throw Error(fmt::format("no candidate_*.ckpt files in {}", dir.string()));
  std::sort(files.begin(), files.end());

  std::vector<ppo::Candidate> candidates;
  for (const auto& file : files) {
    const auto ckpt = policy::load_checkpoint(file);
    const auto run = eval::evaluate_policy(ckpt.params, config.env, config.reward, config.eval.selection_episodes,
                                           config.eval.selection_seed);
    logger()->info("model {} ({}): mean reward {:.3f}, completion {:.2f}", ckpt.meta.model_id,
                   file.filename().string(), run.report.mean_reward, run.report.completion_rate);
    candidates.push_back({ckpt.meta.model_id, file, run.report.mean_reward, ckpt.meta.seed});
  }
  return candidates;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Virtual-audience training pipeline: demonstrations, BC + PPO training, selection, evaluation",
               "audamp"};
  app.require_subcommand(1);

  GenDemosArgs gen_args;
  auto* gen = app.add_subcommand("gen-demos", "Generate scripted-teacher demonstrations as JSONL");
  gen->add_option("--n", gen_args.n, "Number of episodes")->capture_default_str();
  gen->add_option("--seed", gen_args.seed, "Base seed")->capture_default_str();
  gen->add_option("--out", gen_args.out, "Output JSONL path")->required();
  gen->add_option("--config", gen_args.config, "Run config (env section is used)");

  TrainArgs train_args;
  auto* tr = app.add_subcommand("train", "BC pretraining then PPO for a pool of candidates");
  tr->add_option("--config", train_args.config, "Run config JSON (defaults when omitted)");
  tr->add_option("--candidates", train_args.candidates, "Candidate pool size")->capture_default_str();

  SelectArgs select_args;
  auto* sel = app.add_subcommand("select", "Rank candidate checkpoints and keep the top fraction");
  sel->add_option("--checkpoints", select_args.checkpoints, "Directory of candidate_*.ckpt")->required();
  sel->add_option("--fraction", select_args.fraction, "Fraction kept (default eval.selection_fraction)");
  sel->add_option("--episodes", select_args.episodes, "Evaluation episodes per candidate");
  sel->add_option("--seed", select_args.seed, "Evaluation seed");
  sel->add_option("--config", select_args.config, "Run config JSON");

  EvalArgs eval_args;
  auto* ev = app.add_subcommand("eval", "Evaluate a checkpoint and print the report as JSON");
  ev->add_option("--checkpoint", eval_args.checkpoint, "Checkpoint file")->required();
  ev->add_option("--episodes", eval_args.episodes, "Episodes (default eval.episodes)");
  ev->add_option("--seed", eval_args.seed, "Evaluation seed");
  ev->add_flag("--stochastic", eval_args.stochastic, "Sample actions instead of taking the mode");
  ev->add_option("--config", eval_args.config, "Run config JSON");
  ev->add_option("--report", eval_args.report, "Also write the report to this file");
  ev->add_option("--trajectories", eval_args.trajectories, "Write episode trajectories as JSONL");

  TroupeArgs troupe_args;
  auto* tp = app.add_subcommand("troupe", "Simulate a staggered troupe and compare with the NPC baseline");
  tp->add_option("--checkpoint", troupe_args.checkpoint, "Checkpoint file")->required();
  tp->add_option("--agents", troupe_args.agents, "Number of agents (default eval.troupe_agents)");
  tp->add_option("--seed", troupe_args.seed, "Troupe seed");
  tp->add_flag("--stochastic", troupe_args.stochastic, "Sample actions instead of taking the mode");
  tp->add_option("--config", troupe_args.config, "Run config JSON");
  tp->add_option("--trajectories", troupe_args.trajectories, "Write agent trajectories as JSONL");
  tp->add_option("--svg", troupe_args.svg, "Write an overhead SVG plot");

  ExportArgs export_args;
  auto* ex = app.add_subcommand("export", "Convert a JSONL trajectory file to csv, jsonl or svg");
  ex->add_option("--trajectory", export_args.trajectory, "Input JSONL")->required();
  ex->add_option("--format", export_args.format, "Output format")
      ->required()
      ->check(CLI::IsMember({"csv", "jsonl", "svg"}));
  ex->add_option("--out", export_args.out, "Output path (stdout when omitted)");
  ex->add_option("--config", export_args.config, "Run config JSON (floor plan for svg)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return gen_demos(gen_args, out);
    if (tr->parsed()) return train(train_args, out);
    if (sel->parsed()) return select(select_args, out);
    if (ev->parsed()) return evaluate(eval_args, out);
    if (tp->parsed()) return troupe(troupe_args, out);
    if (ex->parsed()) return export_trajectory(export_args, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace audamp::cli
