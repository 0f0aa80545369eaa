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

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kpistat/pipeline.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

struct Options {
  std::string input;
  std::string builtin;
  std::string standardize = "unit_range";
  bool drop_constant = false;
  std::string metric = "euclidean";
  double power_p = 2.0;
  double power_r = 2.0;
  std::string linkage = "complete";
  std::size_t k = 5;
  std::size_t dim = 2;
  std::size_t factors = 2;
  std::string ca_standardize = "unit_range";
  std::string out;
  std::vector<std::string> formats = {"json", "csv", "svg"};
};

void add_common(CLI::App* cmd, Options& o) {
  auto* input = cmd->add_option("--input", o.input, "KPI CSV file");
  auto* builtin = cmd->add_option("--builtin", o.builtin, "builtin dataset (see `datasets`)");
  input->excludes(builtin);
  cmd->add_option("--standardize", o.standardize, "column scaling: none, zscore, unit_range")
      ->capture_default_str();
  cmd->add_flag("--drop-constant", o.drop_constant, "drop zero-variance columns instead of failing");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--format", o.formats, "output formats (json,csv,svg)")
      ->delimiter(',')
      ->capture_default_str();
}

void add_metric(CLI::App* cmd, Options& o) {
  cmd->add_option("--metric", o.metric,
                  "euclidean, squared_euclidean, city_block, chebychev or power")
      ->capture_default_str();
  cmd->add_option("--power-p", o.power_p, "power distance exponent p")->capture_default_str();
  cmd->add_option("--power-r", o.power_r, "power distance root r")->capture_default_str();
}

kpistat::PipelineConfig make_config(const Options& o, std::set<kpistat::Stage> stages) {
  using namespace kpistat;
  PipelineConfig c;
  if (!o.input.empty()) {
    c.dataset = o.input;
    c.builtin = false;
  } else {
    c.dataset = o.builtin.empty() ? "table1_kpi" : o.builtin;
    c.builtin = true;
  }
  c.standardize.mode = parse_standardize_mode(o.standardize);
  c.standardize.zero_variance_policy =
      o.drop_constant ? ZeroVariancePolicy::drop_column : ZeroVariancePolicy::error;
  const MetricKind kind = parse_metric_kind(o.metric);
  switch (kind) {
    case MetricKind::euclidean: c.metric = Metric::euclidean(); break;
    case MetricKind::squared_euclidean: c.metric = Metric::squared_euclidean(); break;
    case MetricKind::city_block: c.metric = Metric::city_block(); break;
    case MetricKind::chebychev: c.metric = Metric::chebychev(); break;
    case MetricKind::power: c.metric = Metric::power(o.power_p, o.power_r); break;
  }
  c.linkage = parse_linkage(o.linkage);
  c.k_clusters = o.k;
  c.mds_dim = o.dim;
  c.fa_factors = o.factors;
  c.ca_standardize = parse_standardize_mode(o.ca_standardize);
  c.stages = std::move(stages);
  c.outputs = o.out;
  c.formats.clear();
  for (const auto& f : o.formats) c.formats.insert(parse_output_format(f));
  return c;
}

int list_datasets() {
  for (const auto& info : kpistat::builtin_datasets()) {
    const auto frame = kpistat::builtin_dataset(info.id);
    std::cout << info.name << "  (" << frame.n_samples() << " x " << frame.n_variables() << ")  "
              << info.description << "\n";
    for (const auto& note : info.notes) std::cout << "    note: " << note << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using kpistat::Stage;
  CLI::App app{"kpistat: multivariate analysis of network KPI matrices"};
  app.require_subcommand(1);
  Options o;

  auto* correlate = app.add_subcommand("correlate", "Pearson correlation matrix with p-values");
  add_common(correlate, o);

  auto* cluster = app.add_subcommand("cluster", "agglomerative hierarchical clustering");
  add_common(cluster, o);
  add_metric(cluster, o);
  cluster->add_option("--linkage", o.linkage, "complete, single or average")->capture_default_str();
  cluster->add_option("--k", o.k, "number of clusters")->capture_default_str();

  auto* mds = app.add_subcommand("mds", "classical multidimensional scaling");
  add_common(mds, o);
  add_metric(mds, o);
  mds->add_option("--dim", o.dim, "embedding dimension")->capture_default_str();

  auto* ca = app.add_subcommand("ca", "correspondence analysis");
  add_common(ca, o);
  ca->add_option("--ca-standardize", o.ca_standardize, "scaling before CA: none or unit_range")
      ->capture_default_str();

  auto* fa = app.add_subcommand("fa", "maximum-likelihood factor analysis");
  add_common(fa, o);
  fa->add_option("--factors", o.factors, "number of factors")->capture_default_str();

  auto* pipeline = app.add_subcommand("pipeline", "every analysis, with report and figures");
  add_common(pipeline, o);
  add_metric(pipeline, o);
  pipeline->add_option("--linkage", o.linkage, "complete, single or average")->capture_default_str();
  pipeline->add_option("--k", o.k, "number of clusters")->capture_default_str();
  pipeline->add_option("--dim", o.dim, "MDS embedding dimension")->capture_default_str();
  pipeline->add_option("--factors", o.factors, "number of factors")->capture_default_str();
  pipeline->add_option("--ca-standardize", o.ca_standardize, "scaling before CA: none or unit_range")
      ->capture_default_str();

  auto* datasets = app.add_subcommand("datasets", "list builtin datasets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (datasets->parsed()) return list_datasets();

  std::set<Stage> stages;
  if (correlate->parsed()) stages = {Stage::correlation};
  if (cluster->parsed()) stages = {Stage::clustering};
  if (mds->parsed()) stages = {Stage::mds};
  if (ca->parsed()) stages = {Stage::ca};
  if (fa->parsed()) stages = {Stage::factors};
  if (pipeline->parsed()) stages = kpistat::kAllStages;

  kpistat::PipelineConfig config;
  try {
    config = make_config(o, stages);
  } catch (const kpistat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const auto report = kpistat::run_pipeline(config);
    std::cout << kpistat::summary_text(report);
    return 0;
  } catch (const kpistat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.category() == kpistat::ErrorCategory::numeric ? kExitNumeric : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
