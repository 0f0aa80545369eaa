// Copyright 2026 The kpistat Authors
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

#include <span>
#include <string>

#include "kpistat/clustering.hpp"

namespace kpistat {

struct ScatterPoint {
  std::string label;
  double x = 0.0;
  double y = 0.0;
  int group = -1;  ///< colour index; -1 draws the default colour
};

/// Self-contained 800x600 SVG of a dendrogram: leaves along the bottom in drawing order,
/// merge heights on the vertical axis. One path.bracket per merge, one text.leaf-label per leaf.
std::string render_dendrogram(const Dendrogram& tree, const std::string& title = "");

/// Labeled scatter plot. `second` points (e.g. CA column points) are drawn as squares
/// (rect.point-alt), the main set as circles (circle.point). Throws DomainError when
/// `points` is empty or any coordinate is not finite.
std::string render_scatter(std::span<const ScatterPoint> points,
                           std::span<const ScatterPoint> second = {},
                           const std::string& title = "", const std::string& x_label = "",
                           const std::string& y_label = "");

}  // namespace kpistat
