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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "kpistat/distances.hpp"

namespace kpistat {

enum class Linkage { complete, single, average };

std::string_view to_string(Linkage linkage);
Linkage parse_linkage(std::string_view text);

/// One agglomeration step. Node ids 0..n-1 are leaves; merge i creates node n + i.
struct Merge {
  std::size_t left;   ///< smaller child id
  std::size_t right;  ///< larger child id
  double height;
  std::size_t size;  ///< leaves under the new node
};

struct Dendrogram {
  std::vector<std::string> leaf_labels;
  std::vector<Merge> merges;

  std::size_t n_leaves() const noexcept { return leaf_labels.size(); }
};

struct Partition {
  std::vector<std::string> labels;
  std::vector<std::size_t> cluster;  ///< cluster id per label, numbered by first appearance
  std::size_t k = 0;

  /// Members of each cluster, in label order.
  std::vector<std::vector<std::string>> groups() const;
};

/// Agglomerative clustering by repeated merging of the closest pair of clusters. Among equally
/// close pairs the lexicographically smallest (smaller id, larger id) is merged first.
Dendrogram agglomerate(const DistanceMatrix& d, Linkage linkage);

/// Undoes the last k - 1 merges. Throws DomainError unless 1 <= k <= n.
Partition cut(const Dendrogram& tree, std::size_t k);

/// Leaf indices in drawing order (left subtree first).
std::vector<std::size_t> leaf_order(const Dendrogram& tree);

/// Newick text with branch lengths equal to height differences.
std::string to_newick(const Dendrogram& tree);

}  // namespace kpistat
