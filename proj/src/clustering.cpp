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

#include "kpistat/clustering.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

#include "kpistat/error.hpp"
#include "kpistat/text_format.hpp"

namespace kpistat {

std::string_view to_string(Linkage linkage) {
  switch (linkage) {
    case Linkage::complete: return "complete";
    case Linkage::single: return "single";
    case Linkage::average: return "average";
  }
  return "complete";
}

Linkage parse_linkage(std::string_view text) {
  for (auto l : {Linkage::complete, Linkage::single, Linkage::average})
    if (to_string(l) == text) return l;
  throw DomainError("unknown linkage '" + std::string(text) + "'");
}

std::vector<std::vector<std::string>> Partition::groups() const {
  std::vector<std::vector<std::string>> out(k);
  for (std::size_t i = 0; i < labels.size(); ++i) out[cluster[i]].push_back(labels[i]);
  return out;
}

Dendrogram agglomerate(const DistanceMatrix& d, Linkage linkage) {
  validate(d);
  const std::size_t n = d.labels.size();
  if (n < 2) throw TooFewSamples(n, 2);

  // Slot i holds one active cluster; merged clusters reuse the slot of their first member.
  Matrix w = d.d;
  std::vector<std::size_t> node(n);
  std::iota(node.begin(), node.end(), std::size_t{0});
  std::vector<std::size_t> size(n, 1);
  std::vector<bool> active(n, true);

  Dendrogram tree{d.labels, {}};
  tree.merges.reserve(n - 1);
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t best_a = 0, best_b = 0;
    std::pair<std::size_t, std::size_t> best_ids{std::numeric_limits<std::size_t>::max(), 0};
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n; ++a) {
      if (!active[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!active[b]) continue;
        const std::pair ids{std::min(node[a], node[b]), std::max(node[a], node[b])};
        const double v = w(a, b);
        if (v < best || (v == best && ids < best_ids)) {
          best = v;
          best_ids = ids;
          best_a = a;
          best_b = b;
        }
      }
    }

    for (std::size_t c = 0; c < n; ++c) {
      if (!active[c] || c == best_a || c == best_b) continue;
      const double da = w(best_a, c);
      const double db = w(best_b, c);
      double merged = 0.0;
      switch (linkage) {
        case Linkage::complete: merged = std::max(da, db); break;
        case Linkage::single: merged = std::min(da, db); break;
        case Linkage::average:
          merged = (static_cast<double>(size[best_a]) * da + static_cast<double>(size[best_b]) * db) /
                   static_cast<double>(size[best_a] + size[best_b]);
          break;
      }
      w(best_a, c) = w(c, best_a) = merged;
    }
    const std::size_t merged_size = size[best_a] + size[best_b];
    tree.merges.push_back({best_ids.first, best_ids.second, best, merged_size});
    node[best_a] = n + step;
    size[best_a] = merged_size;
    active[best_b] = false;
  }
  return tree;
}

Partition cut(const Dendrogram& tree, std::size_t k) {
  const std::size_t n = tree.n_leaves();
  if (k < 1 || k > n)
    throw DomainError("cluster count " + std::to_string(k) + " outside 1.." + std::to_string(n));

  // Union-find over node ids, applying only the first n - k merges.
  std::vector<std::size_t> parent(2 * n - 1);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n - k; ++i) {
    const auto& m = tree.merges[i];
    parent[find(m.left)] = n + i;
    parent[find(m.right)] = n + i;
  }

  Partition part{tree.leaf_labels, std::vector<std::size_t>(n), k};
  std::vector<std::size_t> root_to_cluster(2 * n - 1, std::numeric_limits<std::size_t>::max());
  std::size_t next = 0;
  for (std::size_t leaf = 0; leaf < n; ++leaf) {
    auto& id = root_to_cluster[find(leaf)];
    if (id == std::numeric_limits<std::size_t>::max()) id = next++;
    part.cluster[leaf] = id;
  }
  return part;
}

std::vector<std::size_t> leaf_order(const Dendrogram& tree) {
  const std::size_t n = tree.n_leaves();
  std::vector<std::size_t> order;
  if (n == 0) return order;
  if (n == 1) return {0};
  std::vector<std::size_t> stack{2 * n - 2};
  while (!stack.empty()) {
    const std::size_t id = stack.back();
    stack.pop_back();
    if (id < n) {
      order.push_back(id);
      continue;
    }
    const auto& m = tree.merges[id - n];
    stack.push_back(m.right);
    stack.push_back(m.left);
  }
  return order;
}

namespace {

std::string newick_label(const std::string& label) {
  if (label.find_first_of(" \t()[]':;,") == std::string::npos && !label.empty()) return label;
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
  return out;
}

}  // namespace

std::string to_newick(const Dendrogram& tree) {
  const std::size_t n = tree.n_leaves();
  if (n == 1) return newick_label(tree.leaf_labels[0]) + ";";
  auto height = [&](std::size_t id) { return id < n ? 0.0 : tree.merges[id - n].height; };
  std::function<std::string(std::size_t)> emit = [&](std::size_t id) -> std::string {
    if (id < n) return newick_label(tree.leaf_labels[id]);
    const auto& m = tree.merges[id - n];
    return "(" + emit(m.left) + ":" + format_shortest(m.height - height(m.left)) + "," +
           emit(m.right) + ":" + format_shortest(m.height - height(m.right)) + ")";
  };
  return emit(2 * n - 2) + ";";
}

}  // namespace kpistat
