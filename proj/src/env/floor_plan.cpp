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

#include "audamp/env/floor_plan.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "audamp/common/error.hpp"

namespace audamp::env {

Vec2 FloorPlan::clamp(Vec2 p) const {
  return {std::clamp(p.x, 0.0, length), std::clamp(p.y, 0.0, width)};
}

double FloorPlan::distance_to_nearest_wall(Vec2 p) const {
  return std::min({p.x, length - p.x, p.y, width - p.y});
}

FloorPlan build_floorplan(const EnvConfig& config) {
  if (!(config.area > 0.0)) throw ConfigError("env.area", "env.area must be > 0");
  if (!(config.width > 0.0)) throw ConfigError("env.width", "env.width must be > 0");
  if (!(config.zone_area > 0.0)) throw ConfigError("env.zone_area", "env.zone_area must be > 0");
  if (!(config.zone_spacing > 0.0)) {
    throw ConfigError("env.zone_spacing", "env.zone_spacing must be > 0");
  }
  if (!(config.performance_duration > 0.0)) {
    throw ConfigError("env.performance_duration", "env.performance_duration must be > 0");
  }
  if (!(config.wall_margin >= 0.0)) {
    throw ConfigError("env.wall_margin", "env.wall_margin must be >= 0");
  }

  FloorPlan plan;
  plan.width = config.width;
  plan.length = config.area / config.width;
  plan.spawn_point = config.spawn_point;
  plan.exit_x = config.exit_x;
  plan.wall_margin = config.wall_margin;

  const double half_side = std::sqrt(config.zone_area) / 2.0;
  if (config.zone_spacing <= 2.0 * half_side) {
    throw ConfigError("env.zone_spacing", "env.zone_spacing too small: zones would overlap");
  }
  for (int i = 0; i < kZoneCount; ++i) {
    ContentZone& zone = plan.zones[static_cast<std::size_t>(i)];
    zone.center = {config.first_zone_x + config.zone_spacing * i, config.zone_y};
    zone.half_side = half_side;
    zone.index = i;
    zone.performance_duration = config.performance_duration;
    const bool fits = zone.center.x - half_side >= 0.0 && zone.center.x + half_side <= plan.length &&
                      zone.center.y - half_side >= 0.0 && zone.center.y + half_side <= plan.width;
    if (!fits) {
      throw ConfigError("env.zone_spacing",
                        fmt::format("zone {} at ({:.3f}, {:.3f}) does not fit inside the {:.3f} x {:.3f} corridor",
                                    i, zone.center.x, zone.center.y, plan.length, plan.width));
    }
  }

  if (!plan.inside(plan.spawn_point)) {
    throw ConfigError("env.spawn_point", "env.spawn_point must lie inside the corridor");
  }
  if (zone_at(plan, plan.spawn_point) >= 0) {
    throw ConfigError("env.spawn_point", "env.spawn_point must lie outside every zone");
  }
  const ContentZone& last = plan.zones.back();
  if (!(config.exit_x > last.center.x + half_side && config.exit_x < plan.length)) {
    throw ConfigError("env.exit_x", "env.exit_x must lie between the last zone and the corridor end");
  }
  return plan;
}

bool zone_contains(const ContentZone& zone, Vec2 p) {
  // The boundary belongs to the zone; the slack absorbs rounding in center + half_side.
  constexpr double kBoundarySlack = 1e-12;
  return (p - zone.center).chebyshev() <= zone.half_side + kBoundarySlack;
}

int zone_at(const FloorPlan& plan, Vec2 p) {
  for (const ContentZone& zone : plan.zones) {
    if (zone_contains(zone, p)) return zone.index;
  }
  return -1;
}

bool wall_contact(const FloorPlan& plan, Vec2 p) {
  return plan.distance_to_nearest_wall(p) < plan.wall_margin;
}

}  // namespace audamp::env
