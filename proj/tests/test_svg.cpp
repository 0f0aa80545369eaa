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

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "kpistat/error.hpp"
#include "kpistat/svg.hpp"

using namespace kpistat;

namespace {

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_SUITE("svg") {

TEST_CASE("dendrogram has one bracket per merge and one label per leaf") {
  DistanceMatrix dm{{"a", "b", "c", "d<e>"},
                    Matrix{{0, 1, 4, 6}, {1, 0, 3, 5}, {4, 3, 0, 2}, {6, 5, 2, 0}}};
  const auto svg = render_dendrogram(agglomerate(dm, Linkage::complete), "Tree & co");
  CHECK(svg.starts_with("<?xml"));
  CHECK(svg.find("width=\"800\" height=\"600\"") != std::string::npos);
  CHECK(count(svg, "<path class=\"bracket\"") == 3);
  CHECK(count(svg, "<text class=\"leaf-label\"") == 4);
  CHECK(count(svg, "<text class=\"tick\"") >= 2);
  CHECK(svg.find("d&lt;e&gt;") != std::string::npos);
  CHECK(svg.find("Tree &amp; co") != std::string::npos);
  CHECK(svg.ends_with("</svg>\n"));
  CHECK(render_dendrogram(agglomerate(dm, Linkage::complete), "Tree & co") == svg);
}

TEST_CASE("scatter counts points and labels") {
  std::vector<ScatterPoint> rows{{"r1", 0.1, 0.2, 0}, {"r2", -1, 3, 1}, {"r3", 2, -0.5, 1}};
  std::vector<ScatterPoint> cols{{"c1", 0.5, 0.5, -1}, {"c2", -0.2, 0.1, -1}};
  const auto svg = render_scatter(rows, cols, "CA", "axis 1", "axis 2");
  CHECK(count(svg, "<circle class=\"point\"") == 3);
  CHECK(count(svg, "<rect class=\"point-alt\"") == 2);
  CHECK(count(svg, "<text class=\"point-label") == 5);
  CHECK(count(svg, "<text class=\"tick\"") >= 4);
  CHECK(svg.find(">axis 1<") != std::string::npos);
}

TEST_CASE("degenerate spans still render") {
  std::vector<ScatterPoint> one{{"only", 5, 5, -1}};
  const auto svg = render_scatter(one);
  CHECK(count(svg, "<circle class=\"point\"") == 1);
  CHECK(svg.find("nan") == std::string::npos);
  CHECK(svg.find("inf") == std::string::npos);
}

TEST_CASE("invalid scatter input") {
  CHECK_THROWS_AS(render_scatter({}), DomainError);
  std::vector<ScatterPoint> bad{{"x", NAN, 0, -1}};
  CHECK_THROWS_AS(render_scatter(bad), DomainError);
}

}  // TEST_SUITE
