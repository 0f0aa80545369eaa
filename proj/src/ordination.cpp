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

#include "kpistat/ordination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kpistat/error.hpp"
#include "kpistat/numerics.hpp"

namespace kpistat {

namespace {

// Eigenvalues at or below this fraction of the largest are treated as zero (the centering
// null vector and rounding noise).
constexpr double kPositiveCutoff = 1e-12;

double embedded_distance(const Matrix& x, std::size_t i, std::size_t j, std::size_t dims) {
  double sum = 0.0;
  for (std::size_t c = 0; c < dims; ++c) {
    const double diff = x(i, c) - x(j, c);
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

}  // namespace

double stress(const DistanceMatrix& d, const Matrix& coordinates) {
  const std::size_t n = d.labels.size();
  if (d.d.rows() != n || coordinates.rows() != n)
    throw ShapeError("stress: coordinate rows do not match the distance matrix");
  if (coordinates.cols() < 1) throw ShapeError("stress: coordinates need at least one column");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dij = d.d(i, j);
      const double diff = dij - embedded_distance(coordinates, i, j, coordinates.cols());
      num += diff * diff;
      den += dij * dij;
    }
  if (den == 0.0) throw DomainError("stress is undefined for an all-zero distance matrix");
  return std::sqrt(num / den);
}

Embedding classical_mds(const DistanceMatrix& d, std::size_t dim, std::size_t stress_dim_max) {
  validate(d);
  const std::size_t n = d.labels.size();
  if (n < 2 || dim < 1 || dim > n - 1)
    throw DomainError("MDS dimension " + std::to_string(dim) + " outside 1.." +
                      std::to_string(n > 0 ? n - 1 : 0));
  if (stress_dim_max == 0) stress_dim_max = std::min(n - 1, std::max<std::size_t>(dim, 5));
  stress_dim_max = std::clamp(stress_dim_max, dim, n - 1);

  // B = -1/2 J D^2 J, computed via row, column and grand means of D^2.
  Matrix sq(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sq(i, j) = d.d(i, j) * d.d(i, j);
  std::vector<double> row_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row_mean[i] += sq(i, j);
    grand += row_mean[i];
    row_mean[i] /= static_cast<double>(n);
  }
  grand /= static_cast<double>(n * n);
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      b(i, j) = b(j, i) = -0.5 * (sq(i, j) - row_mean[i] - row_mean[j] + grand);

  const EigenResult eig = sym_eigen(b);
  Embedding out;
  out.labels = d.labels;
  out.eigenvalues = eig.eigenvalues;

  const double top = std::max(0.0, eig.eigenvalues.front());
  auto positive = [&](double lambda) { return lambda > kPositiveCutoff * top; };
  double positive_total = 0.0;
  for (double lambda : eig.eigenvalues)
    if (positive(lambda)) positive_total += lambda;
  out.cumulative_proportion.reserve(n);
  double running = 0.0;
  for (double lambda : eig.eigenvalues) {
    if (positive(lambda)) running += lambda;
    out.cumulative_proportion.push_back(positive_total > 0.0 ? running / positive_total : 1.0);
  }
  if (positive_total > 0.0) {
    // The last positive eigenvalue fixes the tail at exactly 1.
    for (std::size_t m = n; m-- > 0;) {
      if (positive(eig.eigenvalues[m])) break;
      out.cumulative_proportion[m] = 1.0;
    }
  }

  Matrix full(n, stress_dim_max);
  for (std::size_t c = 0; c < stress_dim_max; ++c) {
    const double lambda = eig.eigenvalues[c];
    const double scale = positive(lambda) ? std::sqrt(lambda) : 0.0;
    for (std::size_t i = 0; i < n; ++i) full(i, c) = eig.eigenvectors(i, c) * scale;
  }
  out.coordinates = full.left_columns(dim);

  bool any_distance = false;
  for (double v : d.d.values()) any_distance = any_distance || v != 0.0;
  for (std::size_t m = 1; m <= stress_dim_max; ++m)
    out.stress_by_dim.push_back(any_distance ? stress(d, full.left_columns(m)) : 0.0);
  return out;
}

CaResult correspondence(const KpiFrame& frame) {
  const Matrix& x = frame.values();
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  for (double v : x.values())
    if (v < 0.0) throw DomainError("CA requires nonnegative values");

  std::vector<double> row_sum(n, 0.0), col_sum(p, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      row_sum[i] += x(i, j);
      col_sum[j] += x(i, j);
      total += x(i, j);
    }
  for (std::size_t i = 0; i < n; ++i)
    if (row_sum[i] <= 0.0) throw DegenerateMargin(frame.sample_labels()[i]);
  for (std::size_t j = 0; j < p; ++j)
    if (col_sum[j] <= 0.0) throw DegenerateMargin(frame.variable_labels()[j]);

  CaResult ca;
  ca.row_labels = frame.sample_labels();
  ca.column_labels = frame.variable_labels();
  ca.row_masses.resize(n);
  ca.column_masses.resize(p);
  for (std::size_t i = 0; i < n; ++i) ca.row_masses[i] = row_sum[i] / total;
  for (std::size_t j = 0; j < p; ++j) ca.column_masses[j] = col_sum[j] / total;

  Matrix s(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      const double expected = ca.row_masses[i] * ca.column_masses[j];
      s(i, j) = (x(i, j) / total - expected) / std::sqrt(expected);
    }

  const SvdResult dec = svd(s);
  const std::size_t axes = dec.singular_values.size();
  ca.row_coords = Matrix(n, axes);
  ca.col_coords = Matrix(p, axes);
  for (std::size_t a = 0; a < axes; ++a) {
    const double sv = dec.singular_values[a];
    ca.principal_inertias.push_back(sv * sv);
    ca.total_inertia += sv * sv;
    for (std::size_t i = 0; i < n; ++i)
      ca.row_coords(i, a) = dec.u(i, a) * sv / std::sqrt(ca.row_masses[i]);
    for (std::size_t j = 0; j < p; ++j)
      ca.col_coords(j, a) = dec.v(j, a) * sv / std::sqrt(ca.column_masses[j]);
  }
  return ca;
}

std::size_t nearest_column(const CaResult& ca, std::size_t row, std::size_t axes) {
  if (row >= ca.row_coords.rows()) throw DomainError("CA row index out of range");
  axes = std::min(axes, ca.row_coords.cols());
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < ca.col_coords.rows(); ++j) {
    double sum = 0.0;
    for (std::size_t a = 0; a < axes; ++a) {
      const double diff = ca.row_coords(row, a) - ca.col_coords(j, a);
      sum += diff * diff;
    }
    if (sum < best_d) {
      best_d = sum;
      best = j;
    }
  }
  return best;
}

}  // namespace kpistat
