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

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kpistat/clustering.hpp"
#include "kpistat/correlation.hpp"
#include "kpistat/distances.hpp"
#include "kpistat/error.hpp"
#include "kpistat/factor_analysis.hpp"
#include "kpistat/kpi_frame.hpp"
#include "kpistat/ordination.hpp"

namespace kpistat {

enum class Stage { correlation, clustering, mds, ca, factors };
enum class OutputFormat { json, csv, svg };

std::string_view to_string(Stage stage);
std::string_view to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view text);

inline const std::set<Stage> kAllStages = {Stage::correlation, Stage::clustering, Stage::mds,
                                           Stage::ca, Stage::factors};

struct PipelineConfig {
  /// Builtin dataset name when `builtin` is set, otherwise a CSV path.
  std::string dataset = "table1_kpi";
  bool builtin = true;
  StandardizeSpec standardize{StandardizeMode::unit_range, ZeroVariancePolicy::error};
  Metric metric = Metric::euclidean();
  Linkage linkage = Linkage::complete;
  std::size_t k_clusters = 5;
  std::size_t mds_dim = 2;
  std::size_t fa_factors = 2;
  /// Scaling applied to the raw frame before correspondence analysis (none or unit_range).
  StandardizeMode ca_standardize = StandardizeMode::unit_range;
  std::set<Stage> stages = kAllStages;
  /// Output directory; nothing is written when empty.
  std::string outputs;
  std::set<OutputFormat> formats = {OutputFormat::json, OutputFormat::csv, OutputFormat::svg};
};

struct Report {
  PipelineConfig config;
  std::vector<std::string> sample_labels;
  std::vector<std::string> variable_labels;
  std::optional<CorrelationResult> correlation;
  std::optional<DistanceMatrix> distances;
  std::optional<Dendrogram> dendrogram;
  std::optional<Partition> partition;
  std::optional<Embedding> embedding;
  std::optional<CaResult> ca;
  std::optional<FactorModel> factors;
  std::vector<std::string> narrative;
};

/// A stage failure; keeps the category of the underlying error.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.category(), "stage '" + stage + "': " + cause.what()), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

KpiFrame load_dataset(const PipelineConfig& config);

/// Runs the selected stages in order on an in-memory frame. No files are touched.
Report analyze(const KpiFrame& frame, const PipelineConfig& config);

/// Loads the dataset, analyzes it and, when `config.outputs` is set, writes every requested
/// format. Either all files are written or (on failure) none are left behind.
Report run_pipeline(const PipelineConfig& config);

nlohmann::json config_to_json(const PipelineConfig& config);
nlohmann::json report_to_json(const Report& report);

/// File name and content of every output a report produces for `formats`.
std::vector<std::pair<std::string, std::string>> render_outputs(
    const Report& report, const std::set<OutputFormat>& formats);

/// Human-readable summary printed by the CLI.
std::string summary_text(const Report& report);

}  // namespace kpistat
