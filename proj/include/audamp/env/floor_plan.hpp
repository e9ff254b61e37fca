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

#include <array>

#include "audamp/common/geometry.hpp"

namespace audamp::env {

inline constexpr int kZoneCount = 3;

/// Geometry and kinematic limits of the corridor simulation.
struct EnvConfig {
  // geometry
  double area = 208.54;  // m^2
  double width = 5.8;    // m; length = area / width
  double first_zone_x = 9.0;
  double zone_spacing = 8.0;
  double zone_y = 2.9;
  double zone_area = 2.8;  // m^2, square footprint
  double performance_duration = 17.0;
  Vec2 spawn_point{2.0, 2.9};
  double exit_x = 33.0;
  double wall_margin = 0.3;

  // dynamics
  double dt = 0.1;
  double v_max = 1.5;
  double omega_max = 2.0;
  double horizon = 240.0;
  double spawn_jitter = 0.5;

  bool operator==(const EnvConfig&) const = default;
};

struct ContentZone {
  Vec2 center;
  double half_side = 0.0;
  int index = 0;
  double performance_duration = 0.0;

  bool operator==(const ContentZone&) const = default;
};

struct FloorPlan {
  double length = 0.0;
  double width = 0.0;
  std::array<ContentZone, kZoneCount> zones{};
  Vec2 spawn_point;
  double exit_x = 0.0;
  double wall_margin = 0.0;

  double area() const { return length * width; }
  bool inside(Vec2 p) const { return p.x >= 0.0 && p.x <= length && p.y >= 0.0 && p.y <= width; }
  Vec2 clamp(Vec2 p) const;
  double distance_to_nearest_wall(Vec2 p) const;

  bool operator==(const FloorPlan&) const = default;
};

/// Builds the rectangular corridor with three collinear square zones.
/// Throws ConfigError when zones would overlap each other or the walls.
FloorPlan build_floorplan(const EnvConfig& config);

/// Closed square containment: |p - center|_inf <= half_side.
bool zone_contains(const ContentZone& zone, Vec2 p);

/// Index of the zone containing p, or -1.
int zone_at(const FloorPlan& plan, Vec2 p);

/// True when p is closer than wall_margin to any of the four walls.
bool wall_contact(const FloorPlan& plan, Vec2 p);

}  // namespace audamp::env
