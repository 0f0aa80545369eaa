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

#include "kpistat/factor_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "kpistat/correlation.hpp"
#include "kpistat/error.hpp"
#include "kpistat/numerics.hpp"

namespace kpistat {

namespace {

constexpr std::size_t kMaxIterations = 500;
constexpr double kTolerance = 1e-8;
constexpr int kMaxHalvings = 30;

void check_input(const Matrix& s, std::size_t k) {
  if (!s.square() || s.rows() < 2) throw ShapeError("factor analysis needs a square matrix");
  if (!s.all_finite()) throw NumericError("factor analysis input is not finite");
  if (k < 1 || k >= s.rows())
    throw DomainError("factor count " + std::to_string(k) + " outside 1.." +
                      std::to_string(s.rows() - 1));
}

std::vector<std::string> default_labels(std::vector<std::string> labels, std::size_t p) {
  if (labels.empty())
    for (std::size_t i = 0; i < p; ++i) labels.push_back("V" + std::to_string(i + 1));
  if (labels.size() != p) throw ShapeError("factor analysis labels do not match the matrix");
  return labels;
}

// Applies the uniqueness floor in place, recording which variables it touched.
void clamp_uniquenesses(FactorModel& model) {
  model.heywood_variables.clear();
  for (std::size_t i = 0; i < model.uniquenesses.size(); ++i)
    if (model.uniquenesses[i] < kUniquenessFloor) {
      model.uniquenesses[i] = kUniquenessFloor;
      model.heywood_variables.push_back(i);
    }
  model.heywood = !model.heywood_variables.empty();
}

// Optimal loadings for fixed uniquenesses: omega^1/2 E (Theta - I)^1/2 from the top-k
// eigenpairs of omega^-1/2 S omega^-1/2, negative excesses truncated at 0.
Matrix ml_loadings(const Matrix& s, const std::vector<double>& omega, std::size_t k) {
  const std::size_t p = s.rows();
  Matrix scaled(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      scaled(i, j) = s(i, j) / std::sqrt(omega[i] * omega[j]);
  const EigenResult eig = sym_eigen(scaled);
  Matrix l(p, k);
  for (std::size_t c = 0; c < k; ++c) {
    const double excess = std::sqrt(std::max(0.0, eig.eigenvalues[c] - 1.0));
    for (std::size_t i = 0; i < p; ++i)
      l(i, c) = std::sqrt(omega[i]) * eig.eigenvectors(i, c) * excess;
  }
  return l;
}

std::vector<double> residual_diagonal(const Matrix& s, const Matrix& l) {
  std::vector<double> out(s.rows());
  for (std::size_t i = 0; i < s.rows(); ++i) {
    double communality = 0.0;
    for (std::size_t c = 0; c < l.cols(); ++c) communality += l(i, c) * l(i, c);
    out[i] = s(i, i) - communality;
  }
  return out;
}

}  // namespace

std::string_view to_string(FactorMethod method) {
  return method == FactorMethod::principal ? "principal" : "max_likelihood";
}

Matrix implied_covariance(const Matrix& loadings, const std::vector<double>& uniquenesses) {
  Matrix sigma = loadings * loadings.transposed();
  for (std::size_t i = 0; i < sigma.rows(); ++i) sigma(i, i) += uniquenesses[i];
  return sigma;
}

double factor_log_likelihood(const Matrix& s, const Matrix& loadings,
                             const std::vector<double>& uniquenesses, std::size_t n_samples) {
  const Matrix sigma = implied_covariance(loadings, uniquenesses);
  const EigenResult eig = sym_eigen(sigma);
  const std::size_t p = s.rows();
  double log_det = 0.0;
  for (double lambda : eig.eigenvalues) {
    if (!(lambda > 0.0)) throw NumericError("implied covariance is not positive definite");
    log_det += std::log(lambda);
  }
  // tr(Sigma^-1 S) = sum_m (v_m' S v_m) / lambda_m
  double trace = 0.0;
  for (std::size_t m = 0; m < p; ++m) {
    double quad = 0.0;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j)
        quad += eig.eigenvectors(i, m) * s(i, j) * eig.eigenvectors(j, m);
    trace += quad / eig.eigenvalues[m];
  }
  return -0.5 * static_cast<double>(n_samples) * (log_det + trace);
}

Matrix correlation_of(const Matrix& values) {
  const std::size_t p = values.cols();
  Matrix r = Matrix::identity(p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      r(i, j) = r(j, i) = pearson(values.column(i), values.column(j));
  return r;
}

FactorModel fa_principal(const Matrix& s, std::size_t k, std::vector<std::string> labels) {
  check_input(s, k);
  const std::size_t p = s.rows();
  const EigenResult eig = sym_eigen(s);
  const double scale = std::max(1.0, std::abs(eig.eigenvalues.front()));
  if (eig.eigenvalues.back() < -1e-9 * scale)
    throw NumericError("matrix is not positive semidefinite");

  FactorModel model;
  model.variable_labels = default_labels(std::move(labels), p);
  model.method = FactorMethod::principal;
  model.n_factors = k;
  model.loadings = Matrix(p, k);
  for (std::size_t c = 0; c < k; ++c) {
    const double root = std::sqrt(std::max(0.0, eig.eigenvalues[c]));
    for (std::size_t i = 0; i < p; ++i) model.loadings(i, c) = eig.eigenvectors(i, c) * root;
  }
  model.uniquenesses = residual_diagonal(s, model.loadings);
  clamp_uniquenesses(model);
  return model;
}

FactorModel fa_ml(const Matrix& s, std::size_t k, std::size_t n_samples,
                  std::vector<std::string> labels) {
  check_input(s, k);
  if (n_samples < 1) throw DomainError("factor analysis needs a positive sample count");
  const std::size_t p = s.rows();

  const EigenResult spectrum = sym_eigen(s);
  if (!(spectrum.eigenvalues.back() > 1e-12 * std::max(1.0, spectrum.eigenvalues.front())))
    throw NumericError("matrix is singular or not positive definite");

  FactorModel model;
  model.variable_labels = default_labels(std::move(labels), p);
  model.method = FactorMethod::max_likelihood;
  model.n_factors = k;
  const double pk = static_cast<double>(p - k);
  if (pk * pk < static_cast<double>(p + k))
    model.warnings.push_back("model has more parameters than distinct covariances ((p-k)^2 < p+k)");

  // No common factor exists when every correlation vanishes; the likelihood is then flat along
  // any split of a variance between loading and uniqueness, so answer directly.
  bool diagonal = true;
  for (std::size_t i = 0; i < p && diagonal; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      if (std::abs(s(i, j)) > 1e-12 * std::sqrt(s(i, i) * s(j, j))) {
        diagonal = false;
        break;
      }
  if (diagonal) {
    model.loadings = Matrix(p, k);
    model.uniquenesses.resize(p);
    for (std::size_t i = 0; i < p; ++i) model.uniquenesses[i] = s(i, i);
    clamp_uniquenesses(model);
    model.log_likelihood =
        factor_log_likelihood(s, model.loadings, model.uniquenesses, n_samples);
    model.objective_trace.push_back(model.log_likelihood);
    return model;
  }

  // omega_i = (1 - k / 2p) / (S^-1)_ii
  std::vector<double> omega(p);
  for (std::size_t i = 0; i < p; ++i) {
    double inv_ii = 0.0;
    for (std::size_t m = 0; m < p; ++m)
      inv_ii += spectrum.eigenvectors(i, m) * spectrum.eigenvectors(i, m) / spectrum.eigenvalues[m];
    omega[i] = std::max(kUniquenessFloor,
                        (1.0 - static_cast<double>(k) / (2.0 * static_cast<double>(p))) / inv_ii);
  }

  Matrix l = ml_loadings(s, omega, k);
  double objective = factor_log_likelihood(s, l, omega, n_samples);
  model.objective_trace.push_back(objective);
  model.converged = false;

  std::size_t it = 0;
  for (; it < kMaxIterations; ++it) {
    std::vector<double> target = residual_diagonal(s, l);
    for (double& w : target) w = std::max(w, kUniquenessFloor);
    double proposed = 0.0;
    for (std::size_t i = 0; i < p; ++i) proposed = std::max(proposed, std::abs(target[i] - omega[i]));

    double step = 1.0;
    std::vector<double> trial(p);
    Matrix trial_l;
    double trial_objective = objective;
    bool accepted = false;
    for (int h = 0; h <= kMaxHalvings; ++h, step *= 0.5) {
      for (std::size_t i = 0; i < p; ++i) trial[i] = omega[i] + step * (target[i] - omega[i]);
      trial_l = ml_loadings(s, trial, k);
      trial_objective = factor_log_likelihood(s, trial_l, trial, n_samples);
      // A drop within rounding of the objective is not a decrease: near the optimum the
      // likelihood is flat to ~1e-13 and comparing exactly would stall the iteration.
      const double noise = 1e-12 * std::max(1.0, std::abs(objective));
      if (trial_objective >= objective - noise) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No ascent direction left at this resolution: a stationary point.
      model.converged = true;
      break;
    }
    omega = trial;
    l = std::move(trial_l);
    objective = trial_objective;
    model.objective_trace.push_back(objective);
    if (proposed <= kTolerance) {
      model.converged = true;
      ++it;
      break;
    }
  }
  model.iterations = it;
  model.loadings = std::move(l);
  model.uniquenesses = omega;
  model.log_likelihood = objective;
  clamp_uniquenesses(model);
  // The floor is applied inside the iteration; flag variables sitting on it.
  for (std::size_t i = 0; i < p; ++i)
    if (model.uniquenesses[i] <= kUniquenessFloor &&
        std::find(model.heywood_variables.begin(), model.heywood_variables.end(), i) ==
            model.heywood_variables.end())
      model.heywood_variables.push_back(i);
  std::sort(model.heywood_variables.begin(), model.heywood_variables.end());
  model.heywood = !model.heywood_variables.empty();
  if (!model.converged) model.warnings.push_back("iteration cap reached before convergence");
  return model;
}

}  // namespace kpistat
