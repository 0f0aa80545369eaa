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
#include <string_view>
#include <vector>

#include "kpistat/kpi_frame.hpp"
#include "kpistat/matrix.hpp"

namespace kpistat {

enum class MetricKind { euclidean, squared_euclidean, city_block, chebychev, power };

/// Dissimilarity measure. `p` and `r` are meaningful only for the power distance.
class Metric {
 public:
  static Metric euclidean() { return Metric(MetricKind::euclidean, 0.0, 0.0); }
  static Metric squared_euclidean() { return Metric(MetricKind::squared_euclidean, 0.0, 0.0); }
  /// Mean absolute coordinate difference.
  static Metric city_block() { return Metric(MetricKind::city_block, 0.0, 0.0); }
  static Metric chebychev() { return Metric(MetricKind::chebychev, 0.0, 0.0); }
  /// (sum |x_i - y_i|^p)^(1/r); p = r = 2 is the Euclidean distance. Throws DomainError
  /// unless p > 0 and r > 0.
  static Metric power(double p, double r);

  MetricKind kind() const noexcept { return kind_; }
  double p() const noexcept { return p_; }
  double r() const noexcept { return r_; }

  friend bool operator==(const Metric&, const Metric&) = default;

 private:
  Metric(MetricKind kind, double p, double r) : kind_(kind), p_(p), r_(r) {}
  MetricKind kind_;
  double p_;
  double r_;
};

std::string_view to_string(MetricKind kind);
MetricKind parse_metric_kind(std::string_view text);
/// "power(p=3,r=2)" for power, otherwise the kind name.
std::string describe(const Metric& metric);

struct DistanceMatrix {
  std::vector<std::string> labels;
  Matrix d;
};

double distance(std::span<const double> x, std::span<const double> y, const Metric& metric);

DistanceMatrix distance_matrix(const KpiFrame& frame, const Metric& metric);

/// Throws InvalidDistanceMatrix unless d is square, matches the labels, is finite, exactly
/// symmetric, nonnegative and zero on the diagonal.
void validate(const DistanceMatrix& dm);

/// Labeled square CSV: header row "", labels...; then one row per label.
std::string distance_matrix_csv(const DistanceMatrix& dm);

}  // namespace kpistat
