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

#include <vector>

#include "kpistat/matrix.hpp"

namespace kpistat {

/// Symmetric eigendecomposition, eigenvalues descending and eigenvectors stored as columns.
///
/// Every eigenvector is signed so that its entry of largest magnitude is nonnegative, the
/// lowest index winning ties. This makes every downstream coordinate deterministic.
struct EigenResult {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

/// Thin SVD: `u` is m x r, `v` is n x r, r = min(m, n).
struct SvdResult {
  Matrix u;
  std::vector<double> singular_values;
  Matrix v;
};

/// Cyclic Jacobi. Throws ShapeError on non-square or visibly asymmetric input, NumericError
/// on NaN/Inf, ConvergenceError after 100 sweeps.
EigenResult sym_eigen(const Matrix& a);

/// One-sided (Hestenes) Jacobi SVD. Same sign convention as sym_eigen, applied to `u`.
SvdResult svd(const Matrix& a);

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, int df);

/// Regularized incomplete beta I_x(a, b). `one_minus_x` lets callers pass 1 - x without
/// cancellation; pass a negative value to have it computed.
double regularized_incomplete_beta(double a, double b, double x, double one_minus_x = -1.0);

}  // namespace kpistat
