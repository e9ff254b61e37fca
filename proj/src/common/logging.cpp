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

#include "audamp/common/logging.hpp"

#include <cstdlib>
#include <string_view>

#include <spdlog/sinks/stdout_color_sinks.h>

namespace audamp {

namespace {

spdlog::level::level_enum level_from_env() {
  const char* raw = std::getenv("AUDAMP_LOG_LEVEL");
  if (raw == nullptr) return spdlog::level::info;
  const std::string_view value{raw};
  if (value == "error") return spdlog::level::err;
  if (value == "debug") return spdlog::level::debug;
  return spdlog::level::info;
}

}  // namespace

std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> instance = [] {
    auto log = spdlog::stderr_color_st("audamp");
    log->set_pattern("[%l] %v");
    log->set_level(level_from_env());
    return log;
  }();
  return instance;
}

}  // namespace audamp
