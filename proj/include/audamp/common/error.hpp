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

#include <stdexcept>
#include <string>

namespace audamp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration problems; `key_path()` names the offending entry ("ppo.gamma").
class ConfigError : public Error {
 public:
  ConfigError(std::string key_path, const std::string& message)
      : Error(message), key_path_(std::move(key_path)) {}

  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

/// NaN/Inf encountered in a forward or backward pass.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace audamp
