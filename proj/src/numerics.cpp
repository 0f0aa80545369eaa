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

#include "kpistat/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kpistat/error.hpp"

namespace kpistat {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-14;

// Flip columns so that the largest-magnitude entry of each is nonnegative. `partner` gets the
// same flips (v for an SVD), or may be null.
void apply_sign_convention(Matrix& vectors, Matrix* partner) {
  for (std::size_t c = 0; c < vectors.cols(); ++c) {
    std::size_t best = 0;
    double best_abs = -1.0;
    for (std::size_t r = 0; r < vectors.rows(); ++r) {
      const double v = std::abs(vectors(r, c));
      if (v > best_abs) {
        best_abs = v;
        best = r;
      }
    }
    if (vectors(best, c) < 0.0) {
      for (std::size_t r = 0; r < vectors.rows(); ++r) vectors(r, c) = -vectors(r, c);
      if (partner)
        for (std::size_t r = 0; r < partner->rows(); ++r) (*partner)(r, c) = -(*partner)(r, c);
    }
  }
}

// Indices that sort `values` descending; stable so equal values keep their original order.
std::vector<std::size_t> descending_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return order;
}

Matrix permute_columns(const Matrix& m, const std::vector<std::size_t>& order) {
  Matrix out(m.rows(), order.size());
  for (std::size_t c = 0; c < order.size(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) out(r, c) = m(r, order[c]);
  return out;
}

// Rotation (c, s) that annihilates the (p, q) element of a symmetric 2x2 block
// [[app, apq], [apq, aqq]].
std::pair<double, double> jacobi_rotation(double app, double aqq, double apq) {
  const double theta = (aqq - app) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  return {c, t * c};
}

}  // namespace

EigenResult sym_eigen(const Matrix& input) {
  if (!input.square()) throw ShapeError("eigendecomposition needs a square matrix");
  if (!input.all_finite()) throw NumericError("matrix contains NaN or Inf");
  const std::size_t n = input.rows();

  const double scale = std::max(1.0, input.norm_inf());
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(input(i, j) - input(j, i)) > 1e-9 * scale)
        throw ShapeError("matrix is not symmetric");
      a(i, j) = 0.5 * (input(i, j) + input(j, i));
    }

  Matrix v = Matrix::identity(n);
  const double threshold = kOffDiagonalTolerance * a.norm_frobenius();

  auto off_norm = [&] {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) sum += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(sum);
  };

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_norm() <= threshold) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const auto [c, s] = jacobi_rotation(a(p, p), a(q, q), apq);
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged && off_norm() > threshold)
    throw ConvergenceError("Jacobi eigendecomposition did not converge in 100 sweeps");

  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
  const auto order = descending_order(diag);

  EigenResult result;
  result.eigenvalues.reserve(n);
  for (auto idx : order) result.eigenvalues.push_back(diag[idx]);
  result.eigenvectors = permute_columns(v, order);
  apply_sign_convention(result.eigenvectors, nullptr);
  return result;
}

SvdResult svd(const Matrix& input) {
  if (!input.all_finite()) throw NumericError("matrix contains NaN or Inf");
  if (input.rows() < input.cols()) {
    SvdResult t = svd(input.transposed());
    // Re-apply the sign convention to the new u (the old v).
    SvdResult out{std::move(t.v), std::move(t.singular_values), std::move(t.u)};
    apply_sign_convention(out.u, &out.v);
    return out;
  }

  const std::size_t m = input.rows();
  const std::size_t n = input.cols();
  Matrix u = input;
  Matrix v = Matrix::identity(n);
  const double eps = static_cast<double>(m) * std::numeric_limits<double>::epsilon();
  const double frob2 = input.norm_frobenius() * input.norm_frobenius();
  // Columns whose squared norm is below this are rounding noise and are left alone.
  const double negligible = frob2 * eps * eps;

  bool converged = n < 2;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          alpha += u(k, p) * u(k, p);
          beta += u(k, q) * u(k, q);
          gamma += u(k, p) * u(k, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        if (alpha <= negligible || beta <= negligible) continue;
        rotated = true;
        const auto [c, s] = jacobi_rotation(alpha, beta, gamma);
        for (std::size_t k = 0; k < m; ++k) {
          const double ukp = u(k, p);
          const double ukq = u(k, q);
          u(k, p) = c * ukp - s * ukq;
          u(k, q) = s * ukp + c * ukq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = !rotated;
  }
  if (!converged) throw ConvergenceError("one-sided Jacobi SVD did not converge in 100 sweeps");

  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double norm = 0.0;
    for (std::size_t k = 0; k < m; ++k) norm += u(k, j) * u(k, j);
    sv[j] = std::sqrt(norm);
  }
  const auto order = descending_order(sv);
  SvdResult result;
  for (auto idx : order) result.singular_values.push_back(sv[idx]);
  result.u = permute_columns(u, order);
  result.v = permute_columns(v, order);

  // Normalize u; columns belonging to (numerically) zero singular values are replaced by
  // unit vectors orthogonal to everything before them.
  const double tiny = result.singular_values.empty()
                         ? 0.0
                         : result.singular_values[0] * static_cast<double>(std::max(m, n)) *
                               std::numeric_limits<double>::epsilon();
  for (std::size_t j = 0; j < n; ++j) {
    const double s = result.singular_values[j];
    if (s > tiny) {
      for (std::size_t k = 0; k < m; ++k) result.u(k, j) /= s;
      continue;
    }
    result.singular_values[j] = 0.0;
    for (std::size_t e = 0; e < m; ++e) {
      std::vector<double> cand(m, 0.0);
      cand[e] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t c = 0; c < j; ++c) {
          double dot = 0.0;
          for (std::size_t k = 0; k < m; ++k) dot += result.u(k, c) * cand[k];
          for (std::size_t k = 0; k < m; ++k) cand[k] -= dot * result.u(k, c);
        }
      double norm = 0.0;
      for (double x : cand) norm += x * x;
      norm = std::sqrt(norm);
      if (norm > 0.5) {
        for (std::size_t k = 0; k < m; ++k) result.u(k, j) = cand[k] / norm;
        break;
      }
    }
  }
  apply_sign_convention(result.u, &result.v);
  return result;
}

double regularized_incomplete_beta(double a, double b, double x, double one_minus_x) {
  if (one_minus_x < 0.0) one_minus_x = 1.0 - x;
  if (x <= 0.0) return 0.0;
  if (one_minus_x <= 0.0) return 1.0;

  // Continued fraction converges fast for x < (a+1)/(a+b+2); otherwise use symmetry.
  if (x > (a + 1.0) / (a + b + 2.0)) return 1.0 - regularized_incomplete_beta(b, a, one_minus_x, x);

  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                           b * std::log(one_minus_x);

  // Modified Lentz evaluation.
  constexpr double kTiny = 1e-300;
  constexpr double kTolerance = 1e-14;
  constexpr int kMaxIterations = 300;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  bool converged = false;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + num * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + num / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + num * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + num / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kTolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) throw ConvergenceError("incomplete beta continued fraction did not converge");
  return std::exp(log_front) * h / a;
}

double student_t_two_sided_p(double t, int df) {
  if (df < 1) throw DomainError("Student-t needs df >= 1");
  if (!std::isfinite(t)) throw NumericError("t statistic is not finite");
  if (t == 0.0) return 1.0;
  const double nu = static_cast<double>(df);
  const double t2 = t * t;
  const double x = nu / (nu + t2);
  const double p = regularized_incomplete_beta(0.5 * nu, 0.5, x, t2 / (nu + t2));
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace kpistat
