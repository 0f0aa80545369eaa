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
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kpistat/matrix.hpp"

namespace kpistat {

/// Labeled samples x variables matrix of KPI observations. Immutable once built.
class KpiFrame {
 public:
  /// Validates shape, finiteness and label uniqueness. `units` may be empty (all unit-less).
  KpiFrame(std::vector<std::string> sample_labels, std::vector<std::string> variable_labels,
           std::vector<std::string> units, Matrix values);

  std::size_t n_samples() const noexcept { return values_.rows(); }
  std::size_t n_variables() const noexcept { return values_.cols(); }

  const std::vector<std::string>& sample_labels() const noexcept { return sample_labels_; }
  const std::vector<std::string>& variable_labels() const noexcept { return variable_labels_; }
  const std::vector<std::string>& units() const noexcept { return units_; }
  const Matrix& values() const noexcept { return values_; }

  std::vector<double> column(std::size_t j) const { return values_.column(j); }

  std::optional<std::size_t> find_sample(std::string_view label) const;
  std::optional<std::size_t> find_variable(std::string_view label) const;

  /// Cell by labels; throws DomainError on an unknown label.
  double at(std::string_view sample, std::string_view variable) const;

  friend bool operator==(const KpiFrame&, const KpiFrame&) = default;

 private:
  std::vector<std::string> sample_labels_;
  std::vector<std::string> variable_labels_;
  std::vector<std::string> units_;
  Matrix values_;
};

enum class StandardizeMode { none, zscore, unit_range };
enum class ZeroVariancePolicy { error, drop_column };

struct StandardizeSpec {
  StandardizeMode mode = StandardizeMode::zscore;
  ZeroVariancePolicy zero_variance_policy = ZeroVariancePolicy::error;
};

std::string_view to_string(StandardizeMode mode);
StandardizeMode parse_standardize_mode(std::string_view text);

/// Reads the comma-separated KPI format: a header row (sample-label column name, then
/// variable labels with an optional " (unit)" suffix) followed by one row per sample.
KpiFrame load_csv(std::istream& in);
KpiFrame load_csv_text(std::string_view text);
KpiFrame load_csv_file(const std::string& path);

/// Inverse of load_csv. Numbers use the shortest representation that round-trips exactly.
std::string serialize_csv(const KpiFrame& frame, std::string_view sample_header = "sample");

KpiFrame standardize(const KpiFrame& frame, const StandardizeSpec& spec);

enum class BuiltinDataset { table1_kpi, table2_services };

struct DatasetInfo {
  BuiltinDataset id;
  std::string name;
  std::string description;
  std::string sample_header;
  std::vector<std::string> notes;
};

KpiFrame builtin_dataset(BuiltinDataset name);
const std::vector<DatasetInfo>& builtin_datasets();
/// Looks up a builtin by its textual name; throws DomainError when unknown.
const DatasetInfo& builtin_info(std::string_view name);
const DatasetInfo& builtin_info(BuiltinDataset id);

}  // namespace kpistat
