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

#include <iosfwd>
#include <span>

#include "audamp/env/floor_plan.hpp"
#include "audamp/env/trajectory.hpp"

namespace audamp::eval {

/// Static overhead plot: corridor outline, zones, exit line and one polyline
/// per trajectory.
void write_svg(std::ostream& out, const env::FloorPlan& plan, std::span<const env::Trajectory> trajectories,
               double pixels_per_meter = 20.0);

}  // namespace audamp::eval
