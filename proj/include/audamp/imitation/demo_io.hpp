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
#include <span>
#include <vector>

#include "audamp/env/trajectory.hpp"

namespace audamp::imitation {

// JSONL: one sample per line, {"ep":int,"t":float,"x":float,"y":float,"h":float,"idle":int}.
// CSV: header "ep,t,x,y,h,idle" followed by one sample per row.

void write_jsonl(std::ostream& out, std::span<const env::Trajectory> trajectories);
void write_csv(std::ostream& out, std::span<const env::Trajectory> trajectories);

/// Reads JSONL samples grouped by "ep" in order of first appearance. "h" and
/// "idle" are optional: missing headings are derived from the direction of
/// travel, missing idle states default to 0. Throws Error with the line number
/// on malformed input.
std::vector<env::Trajectory> read_jsonl(std::istream& in);

void write_jsonl_file(const std::filesystem::path& path, std::span<const env::Trajectory> trajectories);
void write_csv_file(const std::filesystem::path& path, std::span<const env::Trajectory> trajectories);
std::vector<env::Trajectory> read_jsonl_file(const std::filesystem::path& path);

}  // namespace audamp::imitation
