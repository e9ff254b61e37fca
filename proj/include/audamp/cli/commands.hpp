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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "audamp/cli/run_config.hpp"
#include "audamp/ppo/selection.hpp"

namespace audamp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // missing file, malformed config, runtime error
inline constexpr int kExitUsage = 2;    // unknown subcommand or flag

/// Entry point: `args` excludes the program name. Results go to `out`, the
/// one-line diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Evaluates every `candidate_*.ckpt` in `dir` (sorted by file name) for
/// eval.selection_episodes deterministic episodes; mean_reward is filled in.
std::vector<ppo::Candidate> rank_checkpoints(const std::filesystem::path& dir, const RunConfig& config);

}  // namespace audamp::cli
