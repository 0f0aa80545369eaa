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
#include <vector>

#include "kpistat/distances.hpp"
#include "kpistat/kpi_frame.hpp"
#include "kpistat/matrix.hpp"

namespace kpistat {

/// Classical (Torgerson) scaling result.
struct Embedding {
  std::vector<std::string> labels;
  Matrix coordinates;                ///< n x dim
  std::vector<double> eigenvalues;   ///< full spectrum of the doubly-centered matrix, descending
  /// Element m-1 is the share of the positive spectrum carried by the first m eigenvalues.
  std::vector<double> cumulative_proportion;
  /// Element m-1 is the stress-1 of the m-dimensional embedding.
  std::vector<double> stress_by_dim;
};

struct CaResult {
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
  Matrix row_coords;  ///< principal coordinates, one column per axis
  Matrix col_coords;
  std::vector<double> row_masses;
  std::vector<double> column_masses;
  std::vector<double> principal_inertias;  ///< descending
  double total_inertia = 0.0;
};

/// `stress_dim_max` = 0 picks min(n - 1, max(dim, 5)). Throws DomainError unless
/// 1 <= dim <= n - 1.
Embedding classical_mds(const DistanceMatrix& d, std::size_t dim, std::size_t stress_dim_max = 0);

/// Kruskal stress-1 of `coordinates` (n x m) against `d`.
double stress(const DistanceMatrix& d, const Matrix& coordinates);

/// Canonical correspondence analysis of a nonnegative table via the SVD of standardized
/// residuals. Rows are samples, columns variables.
CaResult correspondence(const KpiFrame& frame);

/// Index of the column point closest to row point `row` in the first `axes` dimensions.
std::size_t nearest_column(const CaResult& ca, std::size_t row, std::size_t axes = 2);

}  // namespace kpistat
