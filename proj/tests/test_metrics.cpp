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
#include "airt/ingest.hpp"
#include "airt/metrics.hpp"
#include "support.hpp"

using namespace airt;
using namespace airt::metrics;

TEST_CASE("algorithm_metrics: direct formulas") {
  crm::ItemParameters p(2);
  p.set(0, {-0.5, 1.0, -2.0});
  p.set(1, {2.0, -2.064, 1.0});
  const auto m = algorithm_metrics(p, {"neg", "pos"});
  CHECK(m[0].anomalous);
  CHECK(m[0].consistency == doctest::Approx(2.0));
  CHECK(m[0].difficulty_limit == doctest::Approx(-1.0));
  CHECK_FALSE(m[1].anomalous);
  CHECK(m[1].difficulty_limit == doctest::Approx(2.064));
  CHECK(m[1].consistency == doctest::Approx(0.5));
}

TEST_CASE("algorithm_metrics: degenerate sentinel") {
  crm::ItemParameters p(2);
  p.set(0, {0.0, 0.0, 0.0});
  const auto m = algorithm_metrics(p, {"flat", "b"}, {true, false});
  CHECK(std::isinf(m[0].consistency));
  CHECK(std::isnan(m[0].difficulty_limit));
  CHECK(m[0].degenerate);
  REQUIRE_FALSE(m[0].warnings.empty());
}

TEST_CASE("dataset_difficulty: negation") {
  Eigen::Vector3d theta(1.0, -2.0, 0.0);
  const auto d = dataset_difficulty(theta);
  CHECK(d.delta == Eigen::Vector3d(-1.0, 2.0, 0.0));
  Eigen::Index a, b;
  theta.maxCoeff(&a);
  d.delta.minCoeff(&b);
  CHECK(a == b);
  theta[0] = NAN;
  CHECK_THROWS_AS(dataset_difficulty(theta), DomainError);
}

TEST_CASE("metrics on a synthetic fit") {
  std::mt19937_64 rng(42);
  auto truth = airt::testing::random_items(6, 1, rng);
  auto s = airt::testing::simulate(truth, 300, 5);
  const auto model = crm::fit(TransformedResponses::from_logits(s.z));
  const auto m = algorithm_metrics(model);
  CHECK(m[0].anomalous);
  for (int j = 1; j < 6; ++j) CHECK_FALSE(m[j].anomalous);
  const auto d = dataset_difficulty(model.theta);
  CHECK(airt::testing::spearman(d.delta, -s.theta) > 0.95);
}

TEST_CASE("anomalousness is invariant under increasing affine rescaling") {
  std::mt19937_64 rng(17);
  auto truth = airt::testing::random_items(5, 2, rng);
  auto s = airt::testing::simulate(truth, 200, 6);
  PerformanceMatrix m;
  m.values = s.z.unaryExpr([](double v) { return inverse_logit(v); });
  m.descriptor.maximize = true;
  for (int j = 0; j < 5; ++j) m.descriptor.algorithm_names.push_back("a" + std::to_string(j));
  for (int i = 0; i < 200; ++i) m.descriptor.instance_ids.push_back(std::to_string(i));
  const auto base = crm::fit(transform_performance(m, {TransformKind::kIdentity, 0.01}));
  PerformanceMatrix scaled = m;
  scaled.values = (m.values.array() * 0.5 + 0.2).matrix();
  const auto refit = crm::fit(transform_performance(scaled, {TransformKind::kIdentity, 0.01}));
  for (int j = 0; j < 5; ++j)
    CHECK((base.params.alpha[j] < 0) == (refit.params.alpha[j] < 0));
}

TEST_CASE("metric rankings are stable across perturbed restarts") {
  std::mt19937_64 rng(23);
  auto truth = airt::testing::random_items(6, 1, rng);
  auto s = airt::testing::simulate(truth, 250, 8);
  const auto model = crm::fit(TransformedResponses::from_logits(s.z));

  // Restart EM from a perturbed posterior and iterate to convergence.
  std::normal_distribution<double> noise(0.0, 0.3);
  crm::TraitPosterior post = crm::initial_posterior(s.z, {});
  for (Eigen::Index i = 0; i < post.mean.size(); ++i) post.mean[i] += noise(rng);
  crm::ItemParameters p;
  for (int c = 0; c < 400; ++c) {
    p = crm::m_step(s.z, post);
    post = crm::e_step(s.z, p);
  }
  auto kendall = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    int con = 0, dis = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
      for (Eigen::Index j = i + 1; j < a.size(); ++j) {
        const double s1 = (a[i] - a[j]) * (b[i] - b[j]);
        if (s1 > 0) ++con;
        else if (s1 < 0) ++dis;
      }
    return static_cast<double>(con - dis) / (con + dis);
  };
  const Eigen::VectorXd c0 = model.params.alpha.cwiseAbs().cwiseInverse();
  const Eigen::VectorXd c1 = p.alpha.cwiseAbs().cwiseInverse();
  CHECK(kendall(c0, c1) >= 0.9);
  CHECK(kendall(-model.params.beta, -p.beta) >= 0.9);
}
