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

#include "kpistat/kpi_frame.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "kpistat/error.hpp"
#include "kpistat/text_format.hpp"

namespace kpistat {

namespace {

void require_unique(const std::vector<std::string>& labels) {
  std::set<std::string_view> seen;
  for (const auto& label : labels)
    if (!seen.insert(label).second) throw DuplicateLabel(label);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

// "latency (second)" -> {"latency", "second"}. The unit group must be the final token and be
// separated from the label by whitespace.
std::pair<std::string, std::string> split_unit(std::string_view cell) {
  if (cell.empty() || cell.back() != ')') return {std::string(cell), {}};
  const auto open = cell.rfind('(');
  if (open == std::string_view::npos || open == 0) return {std::string(cell), {}};
  const auto inner = cell.substr(open + 1, cell.size() - open - 2);
  if (inner.find_first_of("()") != std::string_view::npos) return {std::string(cell), {}};
  const char before = cell[open - 1];
  if (before != ' ' && before != '\t') return {std::string(cell), {}};
  const auto label = trim(cell.substr(0, open));
  if (label.empty()) return {std::string(cell), {}};
  return {std::string(label), std::string(trim(inner))};
}

std::optional<double> parse_number(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value))
    return std::nullopt;
  return value;
}

}  // namespace

KpiFrame::KpiFrame(std::vector<std::string> sample_labels,
                   std::vector<std::string> variable_labels, std::vector<std::string> units,
                   Matrix values)
    : sample_labels_(std::move(sample_labels)),
      variable_labels_(std::move(variable_labels)),
      units_(std::move(units)),
      values_(std::move(values)) {
  if (units_.empty()) units_.assign(variable_labels_.size(), std::string());
  if (values_.rows() != sample_labels_.size() || values_.cols() != variable_labels_.size() ||
      units_.size() != variable_labels_.size())
    throw ShapeError("KPI frame labels do not match the value matrix dimensions");
  if (sample_labels_.empty()) throw EmptyDataset();
  if (variable_labels_.empty()) throw ShapeError("KPI frame has no variables");
  if (!values_.all_finite()) throw NumericError("KPI frame contains non-finite values");
  require_unique(sample_labels_);
  require_unique(variable_labels_);
}

std::optional<std::size_t> KpiFrame::find_sample(std::string_view label) const {
  const auto it = std::find(sample_labels_.begin(), sample_labels_.end(), label);
  if (it == sample_labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - sample_labels_.begin());
}

std::optional<std::size_t> KpiFrame::find_variable(std::string_view label) const {
  const auto it = std::find(variable_labels_.begin(), variable_labels_.end(), label);
  if (it == variable_labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variable_labels_.begin());
}

double KpiFrame::at(std::string_view sample, std::string_view variable) const {
  const auto i = find_sample(sample);
  if (!i) throw DomainError("unknown sample '" + std::string(sample) + "'");
  const auto j = find_variable(variable);
  if (!j) throw DomainError("unknown variable '" + std::string(variable) + "'");
  return values_(*i, *j);
}

std::string_view to_string(StandardizeMode mode) {
  switch (mode) {
    case StandardizeMode::none: return "none";
    case StandardizeMode::zscore: return "zscore";
    case StandardizeMode::unit_range: return "unit_range";
  }
  return "none";
}

StandardizeMode parse_standardize_mode(std::string_view text) {
  if (text == "none") return StandardizeMode::none;
  if (text == "zscore") return StandardizeMode::zscore;
  if (text == "unit_range") return StandardizeMode::unit_range;
  throw DomainError("unknown standardization mode '" + std::string(text) + "'");
}

KpiFrame load_csv(std::istream& in) {
  std::vector<std::string> sample_labels;
  std::vector<std::string> variable_labels;
  std::vector<std::string> units;
  std::vector<double> values;
  bool have_header = false;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;

    const auto cells = split_cells(line);
    if (!have_header) {
      if (cells.size() < 2) throw ParseError("header has no variable columns", line_no);
      for (std::size_t c = 1; c < cells.size(); ++c) {
        auto [label, unit] = split_unit(cells[c]);
        if (label.empty()) throw ParseError("empty variable label", line_no, c + 1);
        variable_labels.push_back(std::move(label));
        units.push_back(std::move(unit));
      }
      require_unique(variable_labels);
      have_header = true;
      continue;
    }

    if (cells.size() != variable_labels.size() + 1)
      throw ParseError("row " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                           " cells, expected " + std::to_string(variable_labels.size() + 1),
                       line_no);
    if (cells[0].empty()) throw ParseError("empty sample label", line_no, 1);
    sample_labels.emplace_back(cells[0]);
    for (std::size_t c = 1; c < cells.size(); ++c) {
      const auto v = parse_number(cells[c]);
      if (!v)
        throw ParseError("row " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                             ": '" + std::string(cells[c]) + "' is not a finite number",
                         line_no, c + 1);
      values.push_back(*v);
    }
  }
  if (!have_header || sample_labels.empty()) throw EmptyDataset();
  require_unique(sample_labels);

  Matrix m(sample_labels.size(), variable_labels.size());
  std::copy(values.begin(), values.end(), m.row(0).begin());
  return KpiFrame(std::move(sample_labels), std::move(variable_labels), std::move(units),
                  std::move(m));
}

KpiFrame load_csv_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_csv(in);
}

KpiFrame load_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  return load_csv(in);
}

std::string serialize_csv(const KpiFrame& frame, std::string_view sample_header) {
  std::string out(sample_header);
  for (std::size_t j = 0; j < frame.n_variables(); ++j) {
    out += ',';
    out += frame.variable_labels()[j];
    if (!frame.units()[j].empty()) {
      out += " (";
      out += frame.units()[j];
      out += ')';
    }
  }
  out += '\n';
  for (std::size_t i = 0; i < frame.n_samples(); ++i) {
    out += frame.sample_labels()[i];
    for (double v : frame.values().row(i)) {
      out += ',';
      out += format_shortest(v);
    }
    out += '\n';
  }
  return out;
}

KpiFrame standardize(const KpiFrame& frame, const StandardizeSpec& spec) {
  if (spec.mode == StandardizeMode::none) return frame;
  const std::size_t n = frame.n_samples();
  if (spec.mode == StandardizeMode::zscore && n < 2) throw TooFewSamples(n, 2);

  std::vector<std::size_t> kept;
  std::vector<std::vector<double>> columns;
  for (std::size_t j = 0; j < frame.n_variables(); ++j) {
    auto col = frame.column(j);
    const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
    if (*lo == *hi) {
      if (spec.zero_variance_policy == ZeroVariancePolicy::error)
        throw ZeroVariance(frame.variable_labels()[j]);
      continue;
    }
    if (spec.mode == StandardizeMode::zscore) {
      double mean = 0.0;
      for (double v : col) mean += v;
      mean /= static_cast<double>(n);
      double ss = 0.0;
      for (double v : col) ss += (v - mean) * (v - mean);
      const double sd = std::sqrt(ss / static_cast<double>(n - 1));
      for (double& v : col) v = (v - mean) / sd;
    } else {
      const double low = *lo;
      const double range = *hi - *lo;
      for (double& v : col) v = (v - low) / range;
    }
    kept.push_back(j);
    columns.push_back(std::move(col));
  }
  if (kept.empty()) throw ZeroVariance(frame.variable_labels().front());

  Matrix m(n, kept.size());
  std::vector<std::string> labels;
  std::vector<std::string> units;
  for (std::size_t c = 0; c < kept.size(); ++c) {
    labels.push_back(frame.variable_labels()[kept[c]]);
    units.push_back(frame.units()[kept[c]]);
    for (std::size_t i = 0; i < n; ++i) m(i, c) = columns[c][i];
  }
  return KpiFrame(frame.sample_labels(), std::move(labels), std::move(units), std::move(m));
}

}  // namespace kpistat
