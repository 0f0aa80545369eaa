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

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "kpistat/error.hpp"
#include "kpistat/factor_analysis.hpp"
#include "kpistat/kpi_frame.hpp"
#include "oracles.hpp"

using namespace kpistat;

namespace {

Matrix column_matrix(const std::vector<std::vector<double>>& cols) {
  Matrix m(cols.front().size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t i = 0; i < cols[c].size(); ++i) m(i, c) = cols[c][i];
  return m;
}

// Off-diagonal magnitude of L' omega^-1 L.
double constraint_offdiagonal(const FactorModel& m) {
  const std::size_t k = m.loadings.cols();
  double worst = 0.0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      double v = 0.0;
      for (std::size_t i = 0; i < m.loadings.rows(); ++i)
        v += m.loadings(i, a) * m.loadings(i, b) / m.uniquenesses[i];
      worst = std::max(worst, std::abs(v));
    }
  return worst;
}

double frobenius_residual(const Matrix& s, const FactorModel& m) {
  return (s - implied_covariance(m.loadings, m.uniquenesses)).norm_frobenius();
}

}  // namespace

TEST_SUITE("factor_analysis") {

TEST_CASE("one-factor model is recovered exactly") {
  const std::vector<double> lambda{0.9, 0.8, 0.7}, omega{0.19, 0.36, 0.51};
  const auto s = implied_covariance(column_matrix({lambda}), omega);
  const auto m = fa_ml(s, 1, 100);
  CHECK(m.converged);
  CHECK_FALSE(m.heywood);
  const double sign = m.loadings(0, 0) < 0 ? -1.0 : 1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(sign * m.loadings(i, 0) - lambda[i]) <= 1e-7);
    CHECK(std::abs(m.uniquenesses[i] - omega[i]) <= 1e-7);
  }
  CHECK(m.warnings.empty());  // (3 - 1)^2 == 3 + 1: just identified
  CHECK_FALSE(fa_ml(implied_covariance(column_matrix({lambda, {0.1, -0.2, 0.3}}), omega), 2, 100)
                  .warnings.empty());
}

TEST_CASE("two-factor models are recovered up to rotation") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.2, 0.8);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t p = 6 + trial % 3;
    Matrix l(p, 2);
    std::vector<double> omega(p);
    for (std::size_t i = 0; i < p; ++i) {
      l(i, 0) = u(rng);
      l(i, 1) = (i % 2 ? 1 : -1) * u(rng) * 0.5;
      omega[i] = 0.2 + 0.5 * u(rng);
    }
    const auto s = implied_covariance(l, omega);
    const auto m = fa_ml(s, 2, 200);
    CHECK(m.converged);
    CHECK(frobenius_residual(s, m) <= 1e-6);
    for (std::size_t i = 0; i < p; ++i) CHECK(std::abs(m.uniquenesses[i] - omega[i]) <= 1e-5);
    CHECK(constraint_offdiagonal(m) <= 1e-6);
  }
}

TEST_CASE("likelihood never decreases beyond rounding across accepted iterates") {
  const auto raw = builtin_dataset(BuiltinDataset::table2_services);
  const auto r = correlation_of(raw.values());
  for (std::size_t k : {1u, 2u, 3u}) {
    const auto m = fa_ml(r, k, 20);
    for (std::size_t i = 1; i < m.objective_trace.size(); ++i)
      CHECK(m.objective_trace[i] >=
            m.objective_trace[i - 1] - 1e-12 * std::abs(m.objective_trace[i - 1]));
    CHECK(m.log_likelihood == m.objective_trace.back());
    CHECK(m.log_likelihood ==
          doctest::Approx(factor_log_likelihood(r, m.loadings, m.uniquenesses, 20)).epsilon(1e-12));
  }
}

TEST_CASE("table 1 two-factor solution is a Heywood case with diagonal constraint") {
  const auto r = correlation_of(builtin_dataset(BuiltinDataset::table1_kpi).values());
  const auto m = fa_ml(r, 2, 20);
  CHECK(m.heywood);
  CHECK(m.heywood_variables == std::vector<std::size_t>{0, 4});
  const std::vector<double> expected{0.001, 0.5435, 0.9833, 0.2213, 0.001};
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(m.uniquenesses[i] == doctest::Approx(expected[i]).epsilon(2e-3).scale(1.0));
  CHECK(constraint_offdiagonal(m) <= 1e-6);
  // Free variables satisfy omega = diag(S - L L'); clamped ones are held at the floor.
  for (std::size_t i = 1; i < 4; ++i) {
    double comm = 0;
    for (std::size_t c = 0; c < 2; ++c) comm += m.loadings(i, c) * m.loadings(i, c);
    CHECK(std::abs(r(i, i) - comm - m.uniquenesses[i]) <= 1e-6);
  }
}

TEST_CASE("diagonal covariance has no common factor") {
  Matrix s{{2, 0, 0}, {0, 3, 0}, {0, 0, 0.5}};
  const auto m = fa_ml(s, 1, 50);
  for (double v : m.loadings.values()) CHECK(v == 0.0);
  CHECK(m.uniquenesses == std::vector<double>{2, 3, 0.5});
  CHECK(m.converged);
}

TEST_CASE("principal factors") {
  const std::vector<double> lambda{0.9, 0.8, 0.7}, omega{0.19, 0.36, 0.51};
  const auto s = implied_covariance(column_matrix({lambda}), omega);
  const auto m = fa_principal(s, 1);
  const std::vector<double> l{0.9046350477395412, 0.8754815302400328, 0.8311271271887947};
  const std::vector<double> w{0.18163543040127805, 0.23353209020857046, 0.30922769845090115};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(m.loadings(i, 0) == doctest::Approx(l[i]).epsilon(1e-10));
    CHECK(m.uniquenesses[i] == doctest::Approx(w[i]).epsilon(1e-10));
  }
  CHECK(m.variable_labels == std::vector<std::string>{"V1", "V2", "V3"});

  // Rank-one S: a single factor reproduces it, uniquenesses sit on the floor.
  const auto rank1 = column_matrix({lambda}) * column_matrix({lambda}).transposed();
  const auto r1 = fa_principal(rank1, 1);
  CHECK(r1.heywood);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(std::abs(r1.loadings(i, 0)) - lambda[i]) < 1e-12);
  CHECK_THROWS_AS(fa_principal(Matrix{{1, 2}, {2, 1}}, 1), NumericError);
}

TEST_CASE("ML and principal residuals on exact models") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.3, 0.9);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t p = 5 + trial % 3;
    Matrix l(p, 1);
    std::vector<double> omega(p);
    for (std::size_t i = 0; i < p; ++i) {
      l(i, 0) = u(rng);
      omega[i] = 1.0 - l(i, 0) * l(i, 0);
    }
    const auto s = implied_covariance(l, omega);
    CHECK(frobenius_residual(s, fa_ml(s, 1, 100)) <=
          frobenius_residual(s, fa_principal(s, 1)) + 1e-8);
  }
}

TEST_CASE("ML residual can exceed the principal residual") {
  // A converged one-factor ML fit that lands on the uniqueness floor. ML weights residuals by
  // 1/omega, so it does not minimize the unweighted Frobenius norm, and here principal
  // extraction reproduces the matrix better. The ordering is therefore not universal.
  const Matrix r{
      {1, 0.67244786595902006, -0.45125389148496337, 0.22093628872980925, -0.47289125400152721,
       0.4714447460683745, -0.38545394448711401},
      {0.67244786595902006, 1, -0.19844477930093282, 0.17098798775410759, -0.43251229725351975,
       0.33951377844901715, -0.44005718047863357},
      {-0.45125389148496337, -0.19844477930093282, 1, -0.052634257175061101,
       0.068501236041575195, -0.4258054093784065, 0.26826086999062465},
      {0.22093628872980925, 0.17098798775410759, -0.052634257175061101, 1, -0.28321116125973467,
       -0.1483702328849851, -0.85443450524805431},
      {-0.47289125400152721, -0.43251229725351975, 0.068501236041575195, -0.28321116125973467, 1,
       -0.095239198905246084, 0.60172388528003418},
      {0.4714447460683745, 0.33951377844901715, -0.4258054093784065, -0.1483702328849851,
       -0.095239198905246084, 1, -0.092133031004649632},
      {-0.38545394448711401, -0.44005718047863357, 0.26826086999062465, -0.85443450524805431,
       0.60172388528003418, -0.092133031004649632, 1}};
  const auto ml = fa_ml(r, 1, 13);
  CHECK(ml.converged);
  CHECK(ml.heywood_variables == std::vector<std::size_t>{6});
  CHECK(frobenius_residual(r, ml) > frobenius_residual(r, fa_principal(r, 1)) + 0.1);
}

TEST_CASE("ML residual does not exceed the principal residual on random interior fits") {
  std::mt19937_64 rng(2);
  int total = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto r = correlation_of(oracle::random_matrix(rng, 30, 5));
    const auto ml = fa_ml(r, 1, 30);
    if (ml.heywood || !ml.converged) continue;
    ++total;
    CHECK(frobenius_residual(r, ml) <= frobenius_residual(r, fa_principal(r, 1)) + 1e-8);
  }
  CHECK(total > 0);
}

TEST_CASE("input errors") {
  CHECK_THROWS_AS(fa_ml(Matrix{{1, 1}, {1, 1}}, 1, 10), NumericError);
  CHECK_THROWS_AS(fa_ml(Matrix(2, 3), 1, 10), ShapeError);
  CHECK_THROWS_AS(fa_ml(Matrix::identity(3), 3, 10), DomainError);
  CHECK_THROWS_AS(fa_ml(Matrix::identity(3), 0, 10), DomainError);
  CHECK_THROWS_AS(fa_principal(Matrix::identity(3), 1, {"a"}), ShapeError);
}

}  // TEST_SUITE
