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
#include <span>
#include <string>
#include <vector>

#include "kpistat/kpi_frame.hpp"
#include "kpistat/matrix.hpp"

namespace kpistat {

struct CorrelationResult {
  std::vector<std::string> variable_labels;
  Matrix r;  ///< Pearson coefficients, unit diagonal.
  Matrix p;  ///< Two-sided p-values of H0: rho = 0, zero diagonal.
  std::size_t n_samples = 0;
};

/// Pearson product-moment correlation, two-pass (means first, then deviations).
double pearson(std::span<const double> x, std::span<const double> y);

/// Minimal residual sum of squares per sample of the least-squares line of y on x:
/// [sum (y - ybar)^2 / n] * (1 - r^2).
double q_min(std::span<const double> x, std::span<const double> y);

/// Two-sided p-value of a sample correlation `r` over `n` samples (t-test, df = n - 2).
double correlation_p_value(double r, std::size_t n);

CorrelationResult correlation_matrix(const KpiFrame& frame);

/// Lower-triangular layout: one row per variable, coefficients up to the diagonal, a footer
/// line with the column labels.
std::string correlation_table_text(const CorrelationResult& result, int digits = 7);

}  // namespace kpistat
