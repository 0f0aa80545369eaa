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

#include "kpistat/svg.hpp"

#include <algorithm>
#include <cmath>

#include "kpistat/error.hpp"
#include "kpistat/text_format.hpp"

namespace kpistat {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) { return format_significant(v, 6); }

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string header(const std::string& title) {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
      "viewBox=\"0 0 800 600\" font-family=\"sans-serif\" font-size=\"11\">\n"
      "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  if (!title.empty())
    out += "<text class=\"title\" x=\"400\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
           escape(title) + "</text>\n";
  return out;
}

// Five evenly spaced tick values over [lo, hi].
std::vector<double> ticks(double lo, double hi) {
  std::vector<double> out;
  for (int i = 0; i <= 4; ++i) out.push_back(lo + (hi - lo) * i / 4.0);
  return out;
}

}  // namespace

std::string render_dendrogram(const Dendrogram& tree, const std::string& title) {
  const std::size_t n = tree.n_leaves();
  if (n == 0) throw DomainError("cannot draw an empty dendrogram");
  if (tree.merges.size() + 1 != n) throw DomainError("dendrogram merge count does not match leaves");

  const double left = 70.0, right = kWidth - 20.0, top = 40.0, baseline = kHeight - 120.0;
  double max_height = 0.0;
  for (const auto& m : tree.merges) max_height = std::max(max_height, m.height);
  auto y_of = [&](double h) {
    return max_height > 0.0 ? baseline - (baseline - top) * h / max_height : baseline;
  };

  const auto order = leaf_order(tree);
  std::vector<double> x(2 * n - 1, 0.0), y(2 * n - 1, baseline);
  const double step = n > 1 ? (right - left) / static_cast<double>(n - 1) : 0.0;
  for (std::size_t pos = 0; pos < n; ++pos)
    x[order[pos]] = n > 1 ? left + step * static_cast<double>(pos) : (left + right) / 2.0;

  std::string out = header(title);
  out += "<line class=\"axis\" x1=\"" + num(left - 20) + "\" y1=\"" + num(top) + "\" x2=\"" +
         num(left - 20) + "\" y2=\"" + num(baseline) + "\" stroke=\"black\"/>\n";
  for (double t : ticks(0.0, max_height)) {
    const double ty = y_of(t);
    out += "<line class=\"tick-mark\" x1=\"" + num(left - 24) + "\" y1=\"" + num(ty) + "\" x2=\"" +
           num(left - 20) + "\" y2=\"" + num(ty) + "\" stroke=\"black\"/>\n";
    out += "<text class=\"tick\" x=\"" + num(left - 26) + "\" y=\"" + num(ty + 4) +
           "\" text-anchor=\"end\">" + num(t) + "</text>\n";
    if (max_height == 0.0) break;
  }

  for (std::size_t i = 0; i < tree.merges.size(); ++i) {
    const auto& m = tree.merges[i];
    const std::size_t id = n + i;
    x[id] = 0.5 * (x[m.left] + x[m.right]);
    y[id] = y_of(m.height);
    out += "<path class=\"bracket\" d=\"M" + num(x[m.left]) + " " + num(y[m.left]) + " V" +
           num(y[id]) + " H" + num(x[m.right]) + " V" + num(y[m.right]) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
  }
  for (std::size_t leaf : order) {
    const std::string lx = num(x[leaf]);
    const std::string ly = num(baseline + 10);
    out += "<text class=\"leaf-label\" x=\"" + lx + "\" y=\"" + ly + "\" transform=\"rotate(60 " +
           lx + " " + ly + ")\">" + escape(tree.leaf_labels[leaf]) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render_scatter(std::span<const ScatterPoint> points,
                           std::span<const ScatterPoint> second, const std::string& title,
                           const std::string& x_label, const std::string& y_label) {
  if (points.empty()) throw DomainError("scatter plot needs at least one point");
  double x_lo = points[0].x, x_hi = points[0].x, y_lo = points[0].y, y_hi = points[0].y;
  auto extend = [&](std::span<const ScatterPoint> set) {
    for (const auto& p : set) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw DomainError("scatter coordinates must be finite");
      x_lo = std::min(x_lo, p.x);
      x_hi = std::max(x_hi, p.x);
      y_lo = std::min(y_lo, p.y);
      y_hi = std::max(y_hi, p.y);
    }
  };
  extend(points);
  extend(second);
  auto pad = [](double& lo, double& hi) {
    double span = hi - lo;
    if (span == 0.0) {
      span = std::max(1.0, std::abs(lo));
      lo -= 0.5 * span;
      hi += 0.5 * span;
    }
    lo -= 0.05 * span;
    hi += 0.05 * span;
  };
  pad(x_lo, x_hi);
  pad(y_lo, y_hi);

  const double left = 70.0, right = kWidth - 30.0, top = 40.0, bottom = kHeight - 60.0;
  auto px = [&](double v) { return left + (right - left) * (v - x_lo) / (x_hi - x_lo); };
  auto py = [&](double v) { return bottom - (bottom - top) * (v - y_lo) / (y_hi - y_lo); };

  std::string out = header(title);
  out += "<rect class=\"frame\" x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" +
         num(right - left) + "\" height=\"" + num(bottom - top) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  if (x_lo < 0.0 && x_hi > 0.0)
    out += "<line class=\"zero\" x1=\"" + num(px(0)) + "\" y1=\"" + num(top) + "\" x2=\"" +
           num(px(0)) + "\" y2=\"" + num(bottom) + "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  if (y_lo < 0.0 && y_hi > 0.0)
    out += "<line class=\"zero\" x1=\"" + num(left) + "\" y1=\"" + num(py(0)) + "\" x2=\"" +
           num(right) + "\" y2=\"" + num(py(0)) + "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  for (double t : ticks(x_lo, x_hi))
    out += "<text class=\"tick\" x=\"" + num(px(t)) + "\" y=\"" + num(bottom + 16) +
           "\" text-anchor=\"middle\">" + num(t) + "</text>\n";
  for (double t : ticks(y_lo, y_hi))
    out += "<text class=\"tick\" x=\"" + num(left - 6) + "\" y=\"" + num(py(t) + 4) +
           "\" text-anchor=\"end\">" + num(t) + "</text>\n";
  if (!x_label.empty())
    out += "<text class=\"axis-label\" x=\"" + num((left + right) / 2) + "\" y=\"" +
           num(kHeight - 20) + "\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";
  if (!y_label.empty())
    out += "<text class=\"axis-label\" x=\"18\" y=\"" + num((top + bottom) / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " + num((top + bottom) / 2) +
           ")\">" + escape(y_label) + "</text>\n";

  for (const auto& p : points) {
    const char* colour = p.group >= 0 ? kPalette[p.group % 10] : kPalette[0];
    out += "<circle class=\"point\" cx=\"" + num(px(p.x)) + "\" cy=\"" + num(py(p.y)) +
           "\" r=\"4\" fill=\"" + colour + "\"/>\n";
    out += "<text class=\"point-label\" x=\"" + num(px(p.x) + 6) + "\" y=\"" + num(py(p.y) - 4) +
           "\">" + escape(p.label) + "</text>\n";
  }
  for (const auto& p : second) {
    out += "<rect class=\"point-alt\" x=\"" + num(px(p.x) - 4) + "\" y=\"" + num(py(p.y) - 4) +
           "\" width=\"8\" height=\"8\" fill=\"#d62728\"/>\n";
    out += "<text class=\"point-label alt\" x=\"" + num(px(p.x) + 6) + "\" y=\"" +
           num(py(p.y) + 12) + "\" fill=\"#d62728\">" + escape(p.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace kpistat
