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

#include "kpistat/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kpistat/error.hpp"
#include "kpistat/numerics.hpp"

namespace kpistat {

namespace {

struct Moments {
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
};

Moments centered_moments(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ShapeError("correlated sequences differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw TooFewSamples(n, 2);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  Moments m;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  if (m.sxx == 0.0) throw ZeroVariance("x");
  if (m.syy == 0.0) throw ZeroVariance("y");
  return m;
}

double coefficient(const Moments& m) {
  return std::clamp(m.sxy / std::sqrt(m.sxx * m.syy), -1.0, 1.0);
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  return coefficient(centered_moments(x, y));
}

double q_min(std::span<const double> x, std::span<const double> y) {
  const Moments m = centered_moments(x, y);
  const double r2 = (m.sxy * m.sxy) / (m.sxx * m.syy);
  return std::max(0.0, m.syy / static_cast<double>(x.size()) * (1.0 - r2));
}

double correlation_p_value(double r, std::size_t n) {
  if (n < 3) throw TooFewSamples(n, 3);
  if (std::abs(r) >= 1.0 - 1e-12) return 0.0;
  const double df = static_cast<double>(n - 2);
  const double t = r * std::sqrt(df / (1.0 - r * r));
  return student_t_two_sided_p(t, static_cast<int>(n - 2));
}

CorrelationResult correlation_matrix(const KpiFrame& frame) {
  const std::size_t n = frame.n_samples();
  if (n < 3) throw TooFewSamples(n, 3);
  const std::size_t p = frame.n_variables();

  std::vector<std::vector<double>> columns;
  columns.reserve(p);
  for (std::size_t j = 0; j < p; ++j) {
    columns.push_back(frame.column(j));
    const auto [lo, hi] = std::minmax_element(columns.back().begin(), columns.back().end());
    if (*lo == *hi) throw ZeroVariance(frame.variable_labels()[j]);
  }

  CorrelationResult result{frame.variable_labels(), Matrix(p, p), Matrix(p, p), n};
  for (std::size_t i = 0; i < p; ++i) {
    result.r(i, i) = 1.0;
    for (std::size_t j = i + 1; j < p; ++j) {
      const double r = pearson(columns[i], columns[j]);
      const double pv = correlation_p_value(r, n);
      result.r(i, j) = result.r(j, i) = r;
      result.p(i, j) = result.p(j, i) = pv;
    }
  }
  return result;
}

std::string correlation_table_text(const CorrelationResult& result, int digits) {
  const std::size_t p = result.variable_labels.size();
  std::size_t width = 0;
  for (const auto& label : result.variable_labels) width = std::max(width, label.size());

  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < p; ++i) {
    std::string line = result.variable_labels[i];
    line.resize(width, ' ');
    for (std::size_t j = 0; j <= i; ++j) {
      std::snprintf(buf, sizeof buf, "  %*.*f", digits + 3, digits, result.r(i, j));
      line += buf;
    }
    out += line;
    out += '\n';
  }
  std::string footer(width, ' ');
  for (const auto& label : result.variable_labels) {
    footer += "  ";
    footer += label;
  }
  out += footer;
  out += '\n';
  return out;
}

}  // namespace kpistat
