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

#include "airt/error.hpp"
#include "airt/trait_analysis.hpp"

using namespace airt;
using namespace airt::trait;

namespace {

metrics::DatasetDifficulty even_delta(int n) {
  metrics::DatasetDifficulty d{Eigen::VectorXd(n)};
  for (int i = 0; i < n; ++i) d.delta[i] = -2.0 + 4.0 * i / (n - 1);
  return d;
}

}  // namespace

TEST_CASE("fit_curves: grid and fallback") {
  const auto d = even_delta(40);
  Eigen::MatrixXd y(40, 2);
  for (int i = 0; i < 40; ++i) {
    y(i, 0) = 0.5 + 0.1 * d.delta[i];
    y(i, 1) = 0.3;
  }
  const auto c = fit_curves(d, y, {"lin", "flat"});
  CHECK(c.points() == 101);
  CHECK(c.grid.front() == doctest::Approx(-2.0));
  CHECK(c.grid.back() == doctest::Approx(2.0));
  for (int k = 0; k < 101; ++k) {
    CHECK(std::abs(c.curves(0, k) - (0.5 + 0.1 * c.grid[k])) < 1e-6);
    CHECK(std::abs(c.curves(1, k) - 0.3) < 1e-9);
  }
  CHECK_FALSE(c.linear_fallback[0]);

  metrics::DatasetDifficulty few{Eigen::Vector4d(0, 1, 1, 2)};
  Eigen::MatrixXd y4(4, 1);
  y4 << 0.1, 0.2, 0.2, 0.3;
  const auto f = fit_curves(few, y4);
  CHECK(f.linear_fallback[0]);
  CHECK_THROWS_AS(fit_curves(d, y4), ConfigError);
}

TEST_CASE("strengths: single algorithm is strong and weak everywhere") {
  const auto d = even_delta(20);
  Eigen::MatrixXd y = Eigen::MatrixXd::Constant(20, 1, 0.4);
  const auto r = strengths_weaknesses(fit_curves(d, y), 0.0);
  CHECK(r.lto[0] == doctest::Approx(1.0));
  REQUIRE(r.strengths[0].size() == 1);
  REQUIRE(r.weaknesses[0].size() == 1);
  CHECK(r.strengths[0][0].lo == doctest::Approx(-2.0));
  CHECK(r.strengths[0][0].hi == doctest::Approx(2.0));
}

TEST_CASE("strengths: two constant curves") {
  const auto d = even_delta(20);
  Eigen::MatrixXd y(20, 2);
  y.col(0).setConstant(0.9);
  y.col(1).setConstant(0.4);
  const auto r = strengths_weaknesses(fit_curves(d, y, {"top", "bottom"}), 0.0);
  CHECK(r.lto[0] == doctest::Approx(1.0));
  CHECK(r.lto[1] == doctest::Approx(0.0));
  CHECK(r.strengths[1].empty());
  CHECK(r.weaknesses[0].empty());
  CHECK(r.weak.row(1).all());
  const auto port = airt_portfolio(r, {0.0, 0.0});
  CHECK(port == std::vector<int>{0});
}

TEST_CASE("strengths: crossing curves, grid cells, monotonicity in epsilon") {
  const auto d = even_delta(101);
  Eigen::MatrixXd y(101, 3);
  for (int i = 0; i < 101; ++i) {
    const double t = d.delta[i];
    y(i, 0) = 0.5 + 0.2 * t;
    y(i, 1) = 0.5 - 0.2 * t;
    y(i, 2) = 0.45 - 0.01 * t * t;
  }
  const auto c = fit_curves(d, y, {"up", "down", "mid"});
  // Envelope sandwich.
  for (int k = 0; k < c.points(); ++k) {
    const double hi = c.curves.col(k).maxCoeff(), lo = c.curves.col(k).minCoeff();
    for (int j = 0; j < 3; ++j) {
      CHECK(c.curves(j, k) <= hi);
      CHECK(c.curves(j, k) >= lo);
    }
  }
  const auto r0 = strengths_weaknesses(c, 0.0);
  // Each grid point has a strong algorithm.
  for (int k = 0; k < c.points(); ++k) CHECK(r0.strong.col(k).any());
  double total = 0;
  for (double v : r0.lto) total += v;
  CHECK(total == doctest::Approx(1.0).epsilon(0.02));
  CHECK(r0.lto[0] == doctest::Approx(0.5).epsilon(0.03));

  std::vector<double> eps{0.0, 0.01, 0.05, 0.2, 1.0};
  for (size_t e = 1; e < eps.size(); ++e) {
    const auto a = strengths_weaknesses(c, eps[e - 1]);
    const auto b = strengths_weaknesses(c, eps[e]);
    for (int j = 0; j < 3; ++j) {
      CHECK(a.lto[j] <= b.lto[j]);
      CHECK((a.strong.row(j) <= b.strong.row(j)).all());
      CHECK(a.lto[j] >= 0.0);
      CHECK(b.lto[j] <= 1.0);
    }
  }
  const auto all = strengths_weaknesses(c, 1.0);
  for (int j = 0; j < 3; ++j) CHECK(all.lto[j] == doctest::Approx(1.0));
}

TEST_CASE("grid_cell: half-open cells, clamped") {
  std::vector<double> g{0.0, 1.0, 2.0};
  CHECK(grid_cell(g, -5.0) == 0);
  CHECK(grid_cell(g, 0.49) == 0);
  CHECK(grid_cell(g, 0.5) == 1);
  CHECK(grid_cell(g, 1.49) == 1);
  CHECK(grid_cell(g, 1.5) == 2);
  CHECK(grid_cell(g, 9.0) == 2);
}

TEST_CASE("airt_portfolio: ordering and nesting") {
  StrengthReport r;
  r.algorithm_names = {"c", "a", "b", "d"};
  r.lto = {0.3, 0.3, 0.4, 0.0};
  r.strengths = {{Interval{}}, {Interval{}}, {Interval{}}, {}};
  const auto p = airt_portfolio(r, {1.0, 1.0, NAN, 2.0});
  CHECK(p == std::vector<int>{2, 1, 0});
  const auto q = airt_portfolio(r, {2.0, 1.0, 0.0, 0.0});
  CHECK(q == std::vector<int>{2, 0, 1});
  CHECK_THROWS_AS(strengths_weaknesses(TraitCurveSet{}, -1.0), ConfigError);
}
