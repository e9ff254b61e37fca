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

#include "audamp/eval/svg.hpp"

#include <array>
#include <ostream>

#include <fmt/format.h>

namespace audamp::eval {

void write_svg(std::ostream& out, const env::FloorPlan& plan, std::span<const env::Trajectory> trajectories,
               double pixels_per_meter) {
  constexpr std::array<const char*, 6> kColors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
  const double s = pixels_per_meter;
  const double w = plan.length * s;
  const double h = plan.width * s;
  // SVG y grows downward; flip so corridor y points up.
  auto px = [&](Vec2 p) { return std::pair{p.x * s, h - p.y * s}; };

  out << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{:.1f}" height="{:.1f}" viewBox="0 0 {:.1f} {:.1f}">)",
                     w, h, w, h)
      << '\n';
  out << fmt::format(R"(<rect x="0" y="0" width="{:.1f}" height="{:.1f}" fill="#fafafa" stroke="#333" stroke-width="2"/>)",
                     w, h)
      << '\n';
  for (const auto& zone : plan.zones) {
    const auto [x, y] = px(zone.center + Vec2{-zone.half_side, zone.half_side});
    out << fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="#ffe08a" stroke="#c9a227"/>)",
                       x, y, 2 * zone.half_side * s, 2 * zone.half_side * s)
        << '\n';
  }
  out << fmt::format(R"(<line x1="{:.2f}" y1="0" x2="{:.2f}" y2="{:.1f}" stroke="#888" stroke-dasharray="6,4"/>)",
                     plan.exit_x * s, plan.exit_x * s, h)
      << '\n';
  const auto [sx, sy] = px(plan.spawn_point);
  out << fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="4" fill="#555"/>)", sx, sy) << '\n';

  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    out << fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="1.5" points=")", kColors[i % kColors.size()]);
    for (const auto& sample : trajectories[i].samples) {
      const auto [x, y] = px(sample.position);
      out << fmt::format("{:.2f},{:.2f} ", x, y);
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace audamp::eval
