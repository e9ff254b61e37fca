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

#include "audamp/common/geometry.hpp"

namespace audamp {

double wrap_angle(double radians) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(radians, kTwoPi);
  if (wrapped <= -std::numbers::pi) {
    wrapped += kTwoPi;
  } else if (wrapped > std::numbers::pi) {
    wrapped -= kTwoPi;
  }
  return wrapped;
}

Vec2 rotate_into_frame(Vec2 offset, double heading) {
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  return {c * offset.x + s * offset.y, -s * offset.x + c * offset.y};
}

}  // namespace audamp
