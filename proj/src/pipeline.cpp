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

#include "kpistat/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>

#include "kpistat/json_io.hpp"
#include "kpistat/svg.hpp"
#include "kpistat/text_format.hpp"

namespace kpistat {

using nlohmann::json;

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::correlation: return "correlation";
    case Stage::clustering: return "clustering";
    case Stage::mds: return "mds";
    case Stage::ca: return "ca";
    case Stage::factors: return "factors";
  }
  return "correlation";
}

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::svg: return "svg";
  }
  return "json";
}

OutputFormat parse_output_format(std::string_view text) {
  for (auto f : {OutputFormat::json, OutputFormat::csv, OutputFormat::svg})
    if (to_string(f) == text) return f;
  throw DomainError("unknown output format '" + std::string(text) + "'");
}

namespace {

template <typename F>
auto run_stage(std::string_view name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(std::string(name), e);
  }
}

KpiFrame select_columns(const KpiFrame& frame, const std::vector<std::string>& labels) {
  if (labels == frame.variable_labels()) return frame;
  Matrix m(frame.n_samples(), labels.size());
  std::vector<std::string> units;
  for (std::size_t c = 0; c < labels.size(); ++c) {
    const std::size_t j = *frame.find_variable(labels[c]);
    units.push_back(frame.units()[j]);
    for (std::size_t i = 0; i < frame.n_samples(); ++i) m(i, c) = frame.values()(i, j);
  }
  return KpiFrame(frame.sample_labels(), labels, std::move(units), std::move(m));
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * fraction);
  return buf;
}

std::string join(const std::vector<std::string>& items, std::string_view sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

// Smallest m >= 2 whose preceding stress drop exceeds the following one; 0 when none.
std::size_t stress_elbow(const std::vector<double>& stress) {
  for (std::size_t m = 2; m + 1 <= stress.size(); ++m) {
    const double before = stress[m - 2] - stress[m - 1];
    const double after = stress[m - 1] - stress[m];
    if (before > after) return m;
  }
  return 0;
}

void build_narrative(Report& report) {
  auto& out = report.narrative;
  if (report.correlation) {
    const auto& c = *report.correlation;
    for (std::size_t i = 0; i < c.variable_labels.size(); ++i)
      for (std::size_t j = i + 1; j < c.variable_labels.size(); ++j)
        if (c.r(i, j) > 0.6)
          out.push_back(c.variable_labels[i] + " and " + c.variable_labels[j] +
                        " are closely correlated (r = " + format_significant(c.r(i, j), 6) +
                        ", p = " + format_significant(c.p(i, j), 4) + ")");
  }
  if (report.partition) {
    const auto groups = report.partition->groups();
    for (std::size_t g = 0; g < groups.size(); ++g)
      out.push_back("cluster " + std::to_string(g + 1) + " of " + std::to_string(groups.size()) +
                    ": " + join(groups[g]));
  }
  if (report.embedding) {
    const auto& e = *report.embedding;
    const std::size_t m = std::min<std::size_t>(2, e.cumulative_proportion.size());
    std::string line = "the first " + std::to_string(m) + " MDS eigenvalues carry " +
                       percent(e.cumulative_proportion[m - 1]) + " of the positive spectrum";
    if (const auto elbow = stress_elbow(e.stress_by_dim))
      line += "; the stress curve has its elbow at dimension " + std::to_string(elbow);
    out.push_back(line);
  }
  if (report.ca) {
    const auto& ca = *report.ca;
    for (std::size_t i = 0; i < ca.row_labels.size(); ++i)
      out.push_back(ca.row_labels[i] + " is dominantly associated with " +
                    ca.column_labels[nearest_column(ca, i)]);
  }
  if (report.factors && report.factors->heywood) {
    std::vector<std::string> names;
    for (auto v : report.factors->heywood_variables)
      names.push_back(report.factors->variable_labels[v]);
    out.push_back("factor analysis hit the uniqueness floor (Heywood case) for " + join(names));
  }
}

}  // namespace

KpiFrame load_dataset(const PipelineConfig& config) {
  return run_stage("load", [&] {
    if (config.builtin) return builtin_dataset(builtin_info(config.dataset).id);
    return load_csv_file(config.dataset);
  });
}

Report analyze(const KpiFrame& raw, const PipelineConfig& config) {
  const auto wants = [&](Stage s) { return config.stages.count(s) > 0; };
  run_stage("config", [&] {
    if (wants(Stage::clustering) && (config.k_clusters < 1 || config.k_clusters > raw.n_samples()))
      throw DomainError("k_clusters must lie in 1.." + std::to_string(raw.n_samples()));
    if (wants(Stage::mds) && (config.mds_dim < 1 || config.mds_dim + 1 > raw.n_samples()))
      throw DomainError("mds_dim must lie in 1.." + std::to_string(raw.n_samples() - 1));
    if (wants(Stage::ca) && config.ca_standardize == StandardizeMode::zscore)
      throw DomainError("correspondence analysis needs a nonnegative frame (none or unit_range)");
  });

  Report report;
  report.config = config;
  report.sample_labels = raw.sample_labels();

  const KpiFrame scaled = run_stage("standardize", [&] { return standardize(raw, config.standardize); });
  report.variable_labels = scaled.variable_labels();
  const KpiFrame retained = select_columns(raw, scaled.variable_labels());

  if (wants(Stage::correlation))
    report.correlation = run_stage("correlation", [&] { return correlation_matrix(retained); });

  if (wants(Stage::clustering) || wants(Stage::mds))
    report.distances = run_stage("distances", [&] { return distance_matrix(scaled, config.metric); });

  if (wants(Stage::clustering)) {
    report.dendrogram =
        run_stage("clustering", [&] { return agglomerate(*report.distances, config.linkage); });
    report.partition = run_stage("clustering", [&] { return cut(*report.dendrogram, config.k_clusters); });
  }

  if (wants(Stage::mds))
    report.embedding = run_stage("mds", [&] { return classical_mds(*report.distances, config.mds_dim); });

  if (wants(Stage::ca))
    report.ca = run_stage("ca", [&] {
      StandardizeSpec spec{config.ca_standardize, config.standardize.zero_variance_policy};
      return correspondence(standardize(retained, spec));
    });

  if (wants(Stage::factors))
    report.factors = run_stage("factors", [&] {
      return fa_ml(correlation_of(retained.values()), config.fa_factors, retained.n_samples(),
                   retained.variable_labels());
    });

  build_narrative(report);
  return report;
}

json config_to_json(const PipelineConfig& config) {
  json stages = json::array();
  for (auto s : config.stages) stages.push_back(std::string(to_string(s)));
  json formats = json::array();
  for (auto f : config.formats) formats.push_back(std::string(to_string(f)));
  json metric = {{"kind", std::string(to_string(config.metric.kind()))},
                 {"description", describe(config.metric)}};
  if (config.metric.kind() == MetricKind::power) {
    metric["p"] = config.metric.p();
    metric["r"] = config.metric.r();
  }
  return {{"dataset", config.dataset},
          {"builtin", config.builtin},
          {"standardize",
           {{"mode", std::string(to_string(config.standardize.mode))},
            {"zero_variance_policy", config.standardize.zero_variance_policy ==
                                             ZeroVariancePolicy::error
                                         ? "error"
                                         : "drop_column"}}},
          {"metric", metric},
          {"linkage", std::string(to_string(config.linkage))},
          {"k_clusters", config.k_clusters},
          {"mds_dim", config.mds_dim},
          {"fa_factors", config.fa_factors},
          {"ca_standardize", std::string(to_string(config.ca_standardize))},
          {"stages", stages},
          {"formats", formats}};
}

json report_to_json(const Report& report) {
  json out = {{"config", config_to_json(report.config)},
              {"samples", report.sample_labels},
              {"variables", report.variable_labels}};
  if (report.correlation) out["correlation"] = to_json(*report.correlation);
  if (report.dendrogram)
    out["clustering"] = {{"dendrogram", to_json(*report.dendrogram)},
                         {"partition", to_json(*report.partition)},
                         {"newick", to_newick(*report.dendrogram)}};
  if (report.embedding) out["mds"] = to_json(*report.embedding);
  if (report.ca) out["ca"] = to_json(*report.ca);
  if (report.factors) out["factors"] = to_json(*report.factors);
  out["narrative"] = report.narrative;
  return out;
}

std::vector<std::pair<std::string, std::string>> render_outputs(
    const Report& report, const std::set<OutputFormat>& formats) {
  std::vector<std::pair<std::string, std::string>> files;
  if (formats.count(OutputFormat::json)) files.emplace_back("report.json", report_to_json(report).dump(2) + "\n");

  if (formats.count(OutputFormat::csv)) {
    if (report.correlation) {
      const auto& c = *report.correlation;
      for (const auto& [name, m] : {std::pair{"correlation_r.csv", &c.r}, {"correlation_p.csv", &c.p}})
        files.emplace_back(name, distance_matrix_csv({c.variable_labels, *m}));
      files.emplace_back("correlation_table.txt", correlation_table_text(c));
    }
    if (report.distances) files.emplace_back("distances.csv", distance_matrix_csv(*report.distances));
    if (report.partition) {
      std::string csv = "label,cluster\n";
      for (std::size_t i = 0; i < report.partition->labels.size(); ++i)
        csv += report.partition->labels[i] + "," + std::to_string(report.partition->cluster[i] + 1) + "\n";
      files.emplace_back("partition.csv", csv);
      files.emplace_back("dendrogram.nwk", to_newick(*report.dendrogram) + "\n");
    }
    if (report.embedding)
      files.emplace_back("mds_coordinates.csv",
                         coordinates_csv(report.embedding->labels, report.embedding->coordinates));
    if (report.ca) {
      std::string csv = coordinates_csv(report.ca->row_labels, report.ca->row_coords, "row");
      const std::string cols = coordinates_csv(report.ca->column_labels, report.ca->col_coords, "column");
      csv += cols.substr(cols.find('\n') + 1);
      files.emplace_back("ca_coordinates.csv", csv);
    }
    if (report.factors) {
      const auto& f = *report.factors;
      std::string csv = "variable";
      for (std::size_t c = 0; c < f.n_factors; ++c) csv += ",F" + std::to_string(c + 1);
      csv += ",uniqueness\n";
      for (std::size_t i = 0; i < f.variable_labels.size(); ++i) {
        csv += f.variable_labels[i];
        for (double v : f.loadings.row(i)) csv += "," + format_shortest(v);
        csv += "," + format_shortest(f.uniquenesses[i]) + "\n";
      }
      files.emplace_back("factor_loadings.csv", csv);
    }
  }

  if (formats.count(OutputFormat::svg)) {
    if (report.dendrogram)
      files.emplace_back("dendrogram.svg",
                         render_dendrogram(*report.dendrogram, "Hierarchical clustering (" +
                                                                   std::string(to_string(report.config.linkage)) +
                                                                   " linkage)"));
    if (report.embedding) {
      std::vector<ScatterPoint> pts;
      const auto& e = *report.embedding;
      for (std::size_t i = 0; i < e.labels.size(); ++i)
        pts.push_back({e.labels[i], e.coordinates(i, 0), e.coordinates.cols() > 1 ? e.coordinates(i, 1) : 0.0,
                       report.partition ? static_cast<int>(report.partition->cluster[i]) : -1});
      files.emplace_back("mds.svg", render_scatter(pts, {}, "Classical MDS", "Dimension 1", "Dimension 2"));
    }
    if (report.ca) {
      const auto& ca = *report.ca;
      auto coord = [](const Matrix& m, std::size_t i, std::size_t a) { return a < m.cols() ? m(i, a) : 0.0; };
      std::vector<ScatterPoint> rows, cols;
      for (std::size_t i = 0; i < ca.row_labels.size(); ++i)
        rows.push_back({ca.row_labels[i], coord(ca.row_coords, i, 0), coord(ca.row_coords, i, 1), -1});
      for (std::size_t j = 0; j < ca.column_labels.size(); ++j)
        cols.push_back({ca.column_labels[j], coord(ca.col_coords, j, 0), coord(ca.col_coords, j, 1), -1});
      files.emplace_back("ca.svg", render_scatter(rows, cols, "Correspondence analysis", "Axis 1", "Axis 2"));
    }
  }
  return files;
}

Report run_pipeline(const PipelineConfig& config) {
  const KpiFrame frame = load_dataset(config);
  Report report = analyze(frame, config);
  if (config.outputs.empty()) return report;

  const auto files = render_outputs(report, config.formats);
  namespace fs = std::filesystem;
  std::vector<fs::path> written;
  try {
    const fs::path dir(config.outputs);
    fs::create_directories(dir);
    for (const auto& [name, content] : files) {
      const fs::path path = dir / name;
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) throw DataError("cannot write '" + path.string() + "'");
      written.push_back(path);
      out << content;
      out.close();
      if (!out) throw DataError("failed writing '" + path.string() + "'");
    }
  } catch (const Error& e) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    throw StageError("output", e);
  } catch (const fs::filesystem_error& e) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    throw StageError("output", DataError(e.what()));
  }
  return report;
}

std::string summary_text(const Report& report) {
  std::string out = "configuration: " + config_to_json(report.config).dump() + "\n";
  if (report.correlation) {
    out += "\ncorrelation coefficients (n = " + std::to_string(report.correlation->n_samples) + ")\n";
    out += correlation_table_text(*report.correlation);
  }
  if (report.partition) {
    out += "\nclusters (k = " + std::to_string(report.partition->k) + ")\n";
    const auto groups = report.partition->groups();
    for (std::size_t g = 0; g < groups.size(); ++g)
      out += "  " + std::to_string(g + 1) + ": " + join(groups[g]) + "\n";
  }
  if (report.embedding) {
    const auto& e = *report.embedding;
    out += "\nMDS cumulative proportion:";
    for (std::size_t m = 0; m < std::min<std::size_t>(5, e.cumulative_proportion.size()); ++m)
      out += " " + percent(e.cumulative_proportion[m]);
    out += "\nMDS stress by dimension:";
    for (double s : e.stress_by_dim) out += " " + format_significant(s, 6);
    out += "\n";
  }
  if (report.ca) {
    out += "\nCA principal inertias:";
    for (double v : report.ca->principal_inertias) out += " " + format_significant(v, 6);
    out += " (total " + format_significant(report.ca->total_inertia, 6) + ")\n";
  }
  if (report.factors) {
    const auto& f = *report.factors;
    out += "\nfactor model (" + std::string(to_string(f.method)) + ", k = " + std::to_string(f.n_factors) +
           (f.converged ? ", converged" : ", NOT converged") + " after " + std::to_string(f.iterations) +
           " iterations)\n";
    for (std::size_t i = 0; i < f.variable_labels.size(); ++i) {
      out += "  " + f.variable_labels[i] + ":";
      for (double v : f.loadings.row(i)) out += " " + format_significant(v, 6);
      out += "  uniqueness " + format_significant(f.uniquenesses[i], 6) + "\n";
    }
  }
  if (!report.narrative.empty()) {
    out += "\nfindings\n";
    for (const auto& line : report.narrative) out += "  - " + line + "\n";
  }
  return out;
}

}  // namespace kpistat
