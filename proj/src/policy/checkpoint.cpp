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

#include "audamp/policy/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "audamp/common/error.hpp"

namespace audamp::policy {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const PolicyParams& params, const CheckpointMeta& meta) {
  const NetLayout& layout = params.layout();
  const nlohmann::json header = {
      {"input_dim", layout.input_dim},
      {"hidden", layout.hidden},
      {"continuous_dim", layout.continuous_dim},
      {"discrete_cardinality", layout.discrete_cardinality},
      {"seed", meta.seed},
      {"training_step", meta.training_step},
      {"model_id", meta.model_id},
      {"param_count", params.size()},
  };
  const std::string text = header.dump();

  std::vector<std::uint8_t> out(kCheckpointMagic, kCheckpointMagic + 8);
  put_u32(out, static_cast<std::uint32_t>(text.size()));
  out.insert(out.end(), text.begin(), text.end());
  out.reserve(out.size() + 4 * params.size());
  for (double v : params.values()) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  return out;
}

Checkpoint decode_checkpoint(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), kCheckpointMagic, 8) != 0) {
    throw Error("not an AUDAMP01 checkpoint");
  }
  const std::uint32_t header_len = get_u32(bytes.data() + 8);
  if (bytes.size() < 12 + static_cast<std::size_t>(header_len)) throw Error("truncated checkpoint header");
  const std::string text(bytes.begin() + 12, bytes.begin() + 12 + header_len);

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(fmt::format("bad checkpoint header: {}", e.what()));
  }
  NetLayout layout;
  CheckpointMeta meta;
  try {
    layout.input_dim = header.at("input_dim").get<int>();
    layout.hidden = header.at("hidden").get<std::array<int, kTrunkDepth>>();
    layout.continuous_dim = header.at("continuous_dim").get<int>();
    layout.discrete_cardinality = header.at("discrete_cardinality").get<int>();
    meta.seed = header.at("seed").get<std::uint64_t>();
    meta.training_step = header.at("training_step").get<std::int64_t>();
    meta.model_id = header.value("model_id", 0);
  } catch (const nlohmann::json::exception& e) {
    throw Error(fmt::format("bad checkpoint header: {}", e.what()));
  }
  layout.validate();

  Checkpoint ckpt{PolicyParams(layout), meta};
  const std::size_t expected = 12 + header_len + 4 * ckpt.params.size();
  if (bytes.size() != expected) {
    throw Error(fmt::format("checkpoint size {} != expected {}", bytes.size(), expected));
  }
  const std::uint8_t* p = bytes.data() + 12 + header_len;
  for (double& v : ckpt.params.values()) {
    v = static_cast<double>(std::bit_cast<float>(get_u32(p)));
    p += 4;
  }
  return ckpt;
}

void save_checkpoint(const std::filesystem::path& path, const PolicyParams& params,
                     const CheckpointMeta& meta) {
  const auto bytes = encode_checkpoint(params, meta);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write checkpoint {}", path.string()));
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(fmt::format("failed writing checkpoint {}", path.string()));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open checkpoint {}", path.string()));
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace audamp::policy
