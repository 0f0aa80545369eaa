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
#include <string>
#include <string_view>
#include <vector>

#include "kpistat/matrix.hpp"

namespace kpistat {

enum class FactorMethod { principal, max_likelihood };

std::string_view to_string(FactorMethod method);

/// Orthogonal factor model S ~ L L' + diag(omega).
struct FactorModel {
  std::vector<std::string> variable_labels;
  Matrix loadings;                  ///< p x k
  std::vector<double> uniquenesses;  ///< omega, diagonal of the specific-variance matrix
  FactorMethod method = FactorMethod::principal;
  std::size_t n_factors = 0;
  double log_likelihood = 0.0;  ///< ML only, up to an additive constant
  bool converged = true;
  std::size_t iterations = 0;
  bool heywood = false;                  ///< some uniqueness hit the floor
  std::vector<std::size_t> heywood_variables;
  std::vector<double> objective_trace;   ///< ML log-likelihood after each accepted iterate
  std::vector<std::string> warnings;
};

inline constexpr double kUniquenessFloor = 1e-3;

/// Principal-component extraction: top-k eigenpairs of `s`, uniquenesses from the residual
/// diagonal. `labels` may be empty.
FactorModel fa_principal(const Matrix& s, std::size_t k, std::vector<std::string> labels = {});

/// Maximum-likelihood factor analysis under the L' omega^-1 L diagonal constraint.
///
/// Alternates (a) L from the top-k eigenpairs of omega^-1/2 S omega^-1/2 and (b)
/// omega = diag(S - L L'), each omega step halved until the log-likelihood does not drop.
/// Stops when max |delta omega| <= 1e-8 or after 500 iterations (converged = false).
FactorModel fa_ml(const Matrix& s, std::size_t k, std::size_t n_samples,
                  std::vector<std::string> labels = {});

/// Gaussian log-likelihood -(n/2) [ln|Sigma| + tr(Sigma^-1 S)] with Sigma = L L' + diag(omega).
double factor_log_likelihood(const Matrix& s, const Matrix& loadings,
                             const std::vector<double>& uniquenesses, std::size_t n_samples);

/// L L' + diag(omega).
Matrix implied_covariance(const Matrix& loadings, const std::vector<double>& uniquenesses);

/// Sample correlation matrix of the columns of `values` (n x p).
Matrix correlation_of(const Matrix& values);

}  // namespace kpistat
