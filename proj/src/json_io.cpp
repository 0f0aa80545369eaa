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

#include "kpistat/json_io.hpp"

#include "kpistat/text_format.hpp"

namespace kpistat {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

json to_json(const KpiFrame& frame) {
  return {{"samples", frame.sample_labels()},
          {"variables", frame.variable_labels()},
          {"units", frame.units()},
          {"values", matrix_to_json(frame.values())}};
}

json to_json(const CorrelationResult& result) {
  return {{"variables", result.variable_labels},
          {"n_samples", result.n_samples},
          {"r", matrix_to_json(result.r)},
          {"p", matrix_to_json(result.p)}};
}

json to_json(const DistanceMatrix& dm) {
  return {{"labels", dm.labels}, {"d", matrix_to_json(dm.d)}};
}

json to_json(const Dendrogram& tree) {
  json merges = json::array();
  for (const auto& m : tree.merges)
    merges.push_back({{"left", m.left}, {"right", m.right}, {"height", m.height}, {"size", m.size}});
  return {{"leaves", tree.leaf_labels}, {"merges", merges}};
}

json to_json(const Partition& partition) {
  json clusters = json::array();
  const auto groups = partition.groups();
  for (std::size_t c = 0; c < groups.size(); ++c)
    clusters.push_back({{"id", c}, {"members", groups[c]}});
  json assignment = json::object();
  for (std::size_t i = 0; i < partition.labels.size(); ++i)
    assignment[partition.labels[i]] = partition.cluster[i];
  return {{"k", partition.k}, {"clusters", clusters}, {"assignment", assignment}};
}

json to_json(const Embedding& embedding) {
  return {{"labels", embedding.labels},
          {"dimension", embedding.coordinates.cols()},
          {"coordinates", matrix_to_json(embedding.coordinates)},
          {"eigenvalues", embedding.eigenvalues},
          {"cumulative_proportion", embedding.cumulative_proportion},
          {"stress_by_dim", embedding.stress_by_dim}};
}

json to_json(const CaResult& ca) {
  return {{"row_labels", ca.row_labels},
          {"column_labels", ca.column_labels},
          {"row_coords", matrix_to_json(ca.row_coords)},
          {"col_coords", matrix_to_json(ca.col_coords)},
          {"row_masses", ca.row_masses},
          {"column_masses", ca.column_masses},
          {"principal_inertias", ca.principal_inertias},
          {"total_inertia", ca.total_inertia}};
}

json to_json(const FactorModel& model) {
  std::vector<double> communalities;
  for (std::size_t i = 0; i < model.loadings.rows(); ++i) {
    double h = 0.0;
    for (double v : model.loadings.row(i)) h += v * v;
    communalities.push_back(h);
  }
  json out = {{"method", std::string(to_string(model.method))},
              {"n_factors", model.n_factors},
              {"variables", model.variable_labels},
              {"loadings", matrix_to_json(model.loadings)},
              {"uniquenesses", model.uniquenesses},
              {"communalities", communalities},
              {"converged", model.converged},
              {"iterations", model.iterations},
              {"heywood", model.heywood},
              {"heywood_variables", model.heywood_variables},
              {"warnings", model.warnings}};
  if (model.method == FactorMethod::max_likelihood) out["log_likelihood"] = model.log_likelihood;
  return out;
}

std::string coordinates_csv(const std::vector<std::string>& labels, const Matrix& coords,
                            std::string_view kind) {
  std::string out = kind.empty() ? "label,x,y\n" : "label,kind,x,y\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += labels[i];
    if (!kind.empty()) {
      out += ',';
      out += kind;
    }
    for (std::size_t c = 0; c < 2; ++c) {
      out += ',';
      out += format_shortest(c < coords.cols() ? coords(i, c) : 0.0);
    }
    out += '\n';
  }
  return out;
}

}  // namespace kpistat
