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

#include "kpistat/distances.hpp"

#include <algorithm>
#include <cmath>

#include "kpistat/error.hpp"
#include "kpistat/text_format.hpp"

namespace kpistat {

Metric Metric::power(double p, double r) {
  if (!(p > 0.0) || !(r > 0.0) || !std::isfinite(p) || !std::isfinite(r))
    throw DomainError("power distance needs p > 0 and r > 0");
  return Metric(MetricKind::power, p, r);
}

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::euclidean: return "euclidean";
    case MetricKind::squared_euclidean: return "squared_euclidean";
    case MetricKind::city_block: return "city_block";
    case MetricKind::chebychev: return "chebychev";
    case MetricKind::power: return "power";
  }
  return "euclidean";
}

MetricKind parse_metric_kind(std::string_view text) {
  for (auto kind : {MetricKind::euclidean, MetricKind::squared_euclidean, MetricKind::city_block,
                    MetricKind::chebychev, MetricKind::power})
    if (to_string(kind) == text) return kind;
  throw DomainError("unknown metric '" + std::string(text) + "'");
}

std::string describe(const Metric& metric) {
  if (metric.kind() != MetricKind::power) return std::string(to_string(metric.kind()));
  return "power(p=" + format_shortest(metric.p()) + ",r=" + format_shortest(metric.r()) + ")";
}

double distance(std::span<const double> x, std::span<const double> y, const Metric& metric) {
  if (x.size() != y.size()) throw ShapeError("distance between vectors of different dimension");
  if (x.empty()) throw ShapeError("distance needs at least one dimension");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
      throw NumericError("distance input is not finite");
    const double diff = std::abs(x[i] - y[i]);
    switch (metric.kind()) {
      case MetricKind::euclidean:
      case MetricKind::squared_euclidean: acc += diff * diff; break;
      case MetricKind::city_block: acc += diff; break;
      case MetricKind::chebychev: acc = std::max(acc, diff); break;
      case MetricKind::power: acc += std::pow(diff, metric.p()); break;
    }
  }
  switch (metric.kind()) {
    case MetricKind::euclidean: return std::sqrt(acc);
    case MetricKind::city_block: return acc / static_cast<double>(x.size());
    case MetricKind::power: return std::pow(acc, 1.0 / metric.r());
    default: return acc;
  }
}

DistanceMatrix distance_matrix(const KpiFrame& frame, const Metric& metric) {
  const std::size_t n = frame.n_samples();
  if (n < 2) throw TooFewSamples(n, 2);
  DistanceMatrix dm{frame.sample_labels(), Matrix(n, n)};
  const Matrix& x = frame.values();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      dm.d(i, j) = dm.d(j, i) = distance(x.row(i), x.row(j), metric);
  return dm;
}

void validate(const DistanceMatrix& dm) {
  const std::size_t n = dm.labels.size();
  if (dm.d.rows() != n || dm.d.cols() != n)
    throw InvalidDistanceMatrix("distance matrix is not square or does not match its labels");
  for (std::size_t i = 0; i < n; ++i) {
    if (dm.d(i, i) != 0.0) throw InvalidDistanceMatrix("distance matrix has a nonzero diagonal");
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = dm.d(i, j);
      if (!std::isfinite(v)) throw InvalidDistanceMatrix("distance matrix contains non-finite values");
      if (v != dm.d(j, i)) throw InvalidDistanceMatrix("distance matrix is not symmetric");
      if (v < 0.0) throw InvalidDistanceMatrix("distance matrix has negative entries");
    }
  }
}

std::string distance_matrix_csv(const DistanceMatrix& dm) {
  std::string out;
  for (const auto& label : dm.labels) {
    out += ',';
    out += label;
  }
  out += '\n';
  for (std::size_t i = 0; i < dm.labels.size(); ++i) {
    out += dm.labels[i];
    for (double v : dm.d.row(i)) {
      out += ',';
      out += format_shortest(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace kpistat
