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
#include <stdexcept>
#include <string>

namespace kpistat {

/// Broad failure class, used by the CLI to pick an exit status.
enum class ErrorCategory { data, numeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorCategory::data, what) {}
};

class NumericFailure : public Error {
 public:
  explicit NumericFailure(const std::string& what) : Error(ErrorCategory::numeric, what) {}
};

/// Malformed CSV input. Row and column are 1-based file coordinates; 0 means "not applicable".
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t column = 0)
      : DataError(what), row_(row), column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

class DuplicateLabel : public DataError {
 public:
  explicit DuplicateLabel(const std::string& label)
      : DataError("duplicate label '" + label + "'"), label_(label) {}
  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
};

class EmptyDataset : public DataError {
 public:
  EmptyDataset() : DataError("dataset has no samples") {}
};

class ZeroVariance : public DataError {
 public:
  explicit ZeroVariance(const std::string& label)
      : DataError("column '" + label + "' has zero variance"), label_(label) {}
  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
};

class TooFewSamples : public DataError {
 public:
  TooFewSamples(std::size_t have, std::size_t need)
      : DataError("too few samples: have " + std::to_string(have) + ", need at least " +
                  std::to_string(need)) {}
};

class ShapeError : public DataError {
 public:
  using DataError::DataError;
};

class DomainError : public DataError {
 public:
  using DataError::DataError;
};

class InvalidDistanceMatrix : public DataError {
 public:
  using DataError::DataError;
};

class DegenerateMargin : public DataError {
 public:
  explicit DegenerateMargin(const std::string& label)
      : DataError("zero margin total for '" + label + "'"), label_(label) {}
  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
};

class NumericError : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

class ConvergenceError : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

}  // namespace kpistat
