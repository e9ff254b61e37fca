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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "audamp/policy/policy_net.hpp"

namespace audamp::policy {

inline constexpr char kCheckpointMagic[9] = "AUDAMP01";

struct CheckpointMeta {
  std::uint64_t seed = 0;
  std::int64_t training_step = 0;
  int model_id = 0;

  bool operator==(const CheckpointMeta&) const = default;
};

struct Checkpoint {
  PolicyParams params;
  CheckpointMeta meta;
};

/// Binary layout:
///   8 bytes   magic "AUDAMP01"
///   4 bytes   little-endian u32 length N of the metadata
///   N bytes   UTF-8 JSON: layout dims, seed, training_step, model_id, param_count
///   4*P bytes parameters as little-endian float32 in PolicyParams block order
std::vector<std::uint8_t> encode_checkpoint(const PolicyParams& params, const CheckpointMeta& meta);
Checkpoint decode_checkpoint(const std::vector<std::uint8_t>& bytes);

void save_checkpoint(const std::filesystem::path& path, const PolicyParams& params,
                     const CheckpointMeta& meta);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace audamp::policy
