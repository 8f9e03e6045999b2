// Copyright 2026 The airt-cpp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <cmath>
#include <random>

#include "airt/goodness.hpp"
#include "support.hpp"

using namespace airt;
using namespace airt::goodness;

TEST_CASE("residuals: perfect predictions and a single error") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Constant(4, 2, 0.5);
  auto r = residuals(x, x);
  CHECK(r.rho.maxCoeff() == 0.0);
  CHECK(r.c == std::vector<double>{1.0});
  Eigen::MatrixXd xh = x;
  xh(2, 1) = 0.2;
  r = residuals(x, xh);
  CHECK(r.rho(2, 1) == doctest::Approx(1.0));
  CHECK(r.rho.sum() == doctest::Approx(1.0));
}

TEST_CASE("residuals: global versus per-algorithm scaling") {
  Eigen::MatrixXd x(2, 2), xh(2, 2);
  x << 0.5, 0.5, 0.5, 0.5;
  xh << 0.4, 0.45, 0.5, 0.5;
  const auto g = residuals(x, xh, ResidualScaling::kGlobal);
  CHECK(g.rho(0, 1) == doctest::Approx(0.5));
  const auto p = residuals(x, xh, ResidualScaling::kPerAlgorithm);
  CHECK(p.rho(0, 1) == doctest::Approx(1.0));
  CHECK(p.c.size() == 2);
}

TEST_CASE("aucdf: limits and range") {
  CHECK(aucdf(Eigen::VectorXd::Zero(10)) == doctest::Approx(1.0));
  CHECK(aucdf(Eigen::VectorXd::Ones(10)) < 1e-3);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::VectorXd rho(15);
    for (auto& v : rho) v = u(rng);
    const double a = aucdf(rho);
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
    // Area under an ECDF on [0,1] is 1 - mean(rho), up to grid resolution.
    CHECK(std::abs(a - (1.0 - rho.mean())) < 2e-3);
    // More error mass never raises the area.
    CHECK(aucdf((rho.array() + 0.1).min(1.0).matrix()) <= a);
  }
}

TEST_CASE("effectiveness: degenerate and uniform cases") {
  const auto flat = effectiveness(Eigen::VectorXd::Constant(5, 0.3));
  CHECK(flat.degenerate);
  CHECK(flat.area == doctest::Approx(1.0));
  Eigen::VectorXd u(1001);
  for (int i = 0; i <= 1000; ++i) u[i] = i / 1000.0;
  const auto c = effectiveness(u);
  CHECK(c.area == doctest::Approx(0.5).epsilon(0.01));
  // Valid CDF.
  for (size_t k = 1; k < c.points.size(); ++k) {
    CHECK(c.points[k].first >= c.points[k - 1].first);
    CHECK(c.points[k].second >= c.points[k - 1].second);
  }
  CHECK(c.points.front().first == 0.0);
  CHECK(c.points.back().first == 1.0);
  CHECK(c.points.back().second == 1.0);
}

TEST_CASE("evaluate: identical inputs give equal areas; MSE by hand") {
  std::mt19937_64 rng(12);
  auto truth = airt::testing::random_items(4, 1, rng);
  auto s = airt::testing::simulate(truth, 120, 4);
  const auto model = crm::fit(TransformedResponses::from_logits(s.z));
  const Eigen::MatrixXd x = s.z.unaryExpr([](double v) { return inverse_logit(v); });
  const auto rep = evaluate(x, model);
  const Eigen::MatrixXd xh = crm::predict_matrix(model, x);
  for (int j = 0; j < 4; ++j) {
    double mse = 0;
    for (int i = 0; i < 120; ++i) mse += (x(i, j) - xh(i, j)) * (x(i, j) - xh(i, j));
    CHECK(rep.rows[j].mse == doctest::Approx(mse / 120).epsilon(1e-12));
    CHECK(rep.rows[j].aucdf >= 0.0);
    CHECK(rep.rows[j].aucdf <= 1.0);
    const auto a = effectiveness(xh.col(j));
    CHECK(std::abs(a.area - rep.rows[j].aupec) < 1e-12);
    CHECK(rep.rows[j].abs_diff ==
          doctest::Approx(std::abs(rep.rows[j].auaec - rep.rows[j].aupec)));
  }
  for (int j = 0; j < 4; ++j) {
    const auto a = effectiveness(x.col(j), CurveKind::kActual);
    const auto b = effectiveness(x.col(j), CurveKind::kPredicted);
    CHECK(std::abs(a.area - b.area) < 1e-12);
  }
}
