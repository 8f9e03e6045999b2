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


#include "airt/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>

#include "airt/error.hpp"
#include "airt/metrics.hpp"
#include "airt/trait_analysis.hpp"

namespace airt::portfolio {
namespace {

std::vector<std::string> resolve_names(const std::vector<std::string>& names,
                                       Eigen::Index n) {
  std::vector<std::string> out;
  for (Eigen::Index j = 0; j < n; ++j)
    out.push_back(j < static_cast<Eigen::Index>(names.size())
                      ? names[j]
                      : std::to_string(j));
  return out;
}

// Ranked indices whose set size is limited to `size`.
std::vector<int> prefix(const std::vector<int>& ranked, int size) {
  return {ranked.begin(), ranked.begin() + size};
}

FoldResult run_fold(const PerformanceMatrix& m, const std::vector<int>& fold_of,
                    int fold, double epsilon, const CompareOptions& options) {
  FoldResult r;
  std::vector<int> train;
  for (int i = 0; i < static_cast<int>(fold_of.size()); ++i)
    (fold_of[i] == fold ? r.test_rows : train).push_back(i);

  const PerformanceMatrix train_m = m.select_rows(train);
  const PerformanceMatrix test_m = m.select_rows(r.test_rows);
  const auto& names = m.descriptor.algorithm_names;

  const TransformConfig tcfg =
      options.transform ? *options.transform : default_transform(m.descriptor);
  const TransformedResponses resp = transform_performance(train_m, tcfg);
  const crm::CrmModel model =
      crm::fit(resp, options.prior, options.fit, names);
  const auto met = metrics::algorithm_metrics(model);
  const auto delta = metrics::dataset_difficulty(model.theta);
  trait::CurveOptions copt;
  copt.grid_points = options.grid_points;
  const auto curves = trait::fit_curves(delta, resp.x, names, copt);
  const auto report = trait::strengths_weaknesses(curves, epsilon);
  std::vector<double> limits;
  for (const auto& a : met) limits.push_back(a.difficulty_limit);
  r.airt = trait::airt_portfolio(report, limits);

  const ShapleyValues sv = shapley_values(resp.x, names);
  for (int j : shapley_ranking(sv))
    if (sv.phi[j] > 0.0) r.shapley.push_back(j);
  for (const auto& e : topset_ranking(resp.x, names))
    if (e.wins > 0) r.topset.push_back(e.algorithm);

  r.limit = static_cast<int>(
      std::min({r.airt.size(), r.shapley.size(), r.topset.size()}));
  const Eigen::VectorXd best = test_m.best_per_instance();
  for (const auto* ranked : {&r.airt, &r.shapley, &r.topset}) {
    std::vector<double> gaps;
    for (int n = 1; n <= r.limit; ++n)
      gaps.push_back(performance_gap(best, prefix(*ranked, n), test_m).mean());
    r.mean_gap.push_back(std::move(gaps));
  }
  return r;
}

}  // namespace

ShapleyValues shapley_values(const Eigen::MatrixXd& x,
                             const std::vector<std::string>& names) {
  if ((x.array() < 0.0).any() || !x.allFinite())
    throw DomainError("portfolio", "Shapley values need finite x >= 0");
  ShapleyValues out;
  const Eigen::Index n = x.cols();
  out.algorithm_names = resolve_names(names, n);
  out.phi = Eigen::VectorXd::Zero(n);
  std::vector<int> order(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return x(i, a) < x(i, b); });
    double acc = 0.0, prev = 0.0;
    for (Eigen::Index r = 0; r < n; ++r) {
      const double v = x(i, order[r]);
      acc += (v - prev) / static_cast<double>(n - r);
      prev = v;
      out.phi[order[r]] += acc;
    }
  }
  return out;
}

std::vector<int> shapley_ranking(const ShapleyValues& values) {
  std::vector<int> idx(static_cast<size_t>(values.phi.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (values.phi[a] != values.phi[b]) return values.phi[a] > values.phi[b];
    return values.algorithm_names[a] < values.algorithm_names[b];
  });
  return idx;
}

std::vector<TopsetEntry> topset_ranking(const Eigen::MatrixXd& x,
                                        const std::vector<std::string>& names) {
  const Eigen::Index n = x.cols();
  const auto label = resolve_names(names, n);
  std::vector<TopsetEntry> out(static_cast<size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    out[j].algorithm = static_cast<int>(j);
    out[j].mean = x.rows() ? x.col(j).mean() : 0.0;
  }
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double top = x.row(i).maxCoeff();
    for (Eigen::Index j = 0; j < n; ++j)
      if (x(i, j) == top) ++out[j].wins;
  }
  std::sort(out.begin(), out.end(),
            [&](const TopsetEntry& a, const TopsetEntry& b) {
              if (a.wins != b.wins) return a.wins > b.wins;
              if (a.mean != b.mean) return a.mean > b.mean;
              return label[a.algorithm] < label[b.algorithm];
            });
  return out;
}

Eigen::VectorXd performance_gap(const Eigen::VectorXd& best_full,
                                const std::vector<std::string>& portfolio,
                                const PerformanceMatrix& y) {
  std::vector<int> idx;
  for (const auto& name : portfolio) idx.push_back(y.algorithm_index(name));
  return performance_gap(best_full, idx, y);
}

Eigen::VectorXd performance_gap(const Eigen::VectorXd& best_full,
                                const std::vector<int>& portfolio,
                                const PerformanceMatrix& y) {
  if (portfolio.empty())
    throw ConfigError("portfolio", "portfolio must not be empty");
  if (best_full.size() != y.values.rows())
    throw ConfigError("portfolio", "best vector and matrix differ in length");
  const bool maximize = y.descriptor.maximize;
  Eigen::VectorXd gap(best_full.size());
  for (Eigen::Index i = 0; i < gap.size(); ++i) {
    double b = maximize ? -INFINITY : INFINITY;
    for (int j : portfolio) {
      if (j < 0 || j >= y.algorithms())
        throw LookupError("portfolio",
                          "algorithm index " + std::to_string(j) +
                              " out of range");
      b = maximize ? std::max(b, y.values(i, j)) : std::min(b, y.values(i, j));
    }
    gap[i] = std::max(0.0, maximize ? best_full[i] - b : b - best_full[i]);
  }
  return gap;
}

const char* to_string(Method method) {
  switch (method) {
    case Method::kAirt:
      return "airt";
    case Method::kShapley:
      return "shapley";
    case Method::kTopset:
      return "topset";
  }
  return "?";
}

std::vector<int> assign_folds(int instances, int folds, std::uint64_t seed) {
  if (folds < 2) throw ConfigError("portfolio", "folds must be >= 2");
  if (folds > instances)
    throw ConfigError("portfolio", "folds (" + std::to_string(folds) +
                                       ") exceed instances (" +
                                       std::to_string(instances) + ")");
  std::vector<int> order(static_cast<size_t>(instances));
  std::iota(order.begin(), order.end(), 0);
  // Explicit Fisher-Yates so the split does not depend on the standard
  // library's distribution implementation.
  std::mt19937_64 rng(seed);
  for (int i = instances - 1; i > 0; --i) {
    const auto k = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(order[i], order[k]);
  }
  std::vector<int> fold_of(static_cast<size_t>(instances));
  for (int p = 0; p < instances; ++p) fold_of[order[p]] = p % folds;
  return fold_of;
}

PortfolioComparison cv_compare(const PerformanceMatrix& m, double epsilon,
                               const CompareOptions& options) {
  if (!(epsilon >= 0.0)) throw ConfigError("portfolio", "epsilon must be >= 0");
  const auto fold_of = assign_folds(m.instances(), options.folds, options.seed);

  PortfolioComparison out;
  out.epsilon = epsilon;
  out.folds = options.folds;
  out.seed = options.seed;
  out.algorithm_names = m.descriptor.algorithm_names;

  std::vector<std::future<FoldResult>> pending;
  for (int f = 0; f < options.folds; ++f)
    pending.push_back(std::async(std::launch::async, run_fold, std::cref(m),
                                 std::cref(fold_of), f, epsilon,
                                 std::cref(options)));
  for (auto& p : pending) out.fold_results.push_back(p.get());

  int max_n = 0;
  for (const auto& r : out.fold_results) max_n = std::max(max_n, r.limit);
  for (int k = 0; k < 3; ++k) {
    for (int n = 1; n <= max_n; ++n) {
      std::vector<double> vals;
      for (const auto& r : out.fold_results)
        if (n <= r.limit) vals.push_back(r.mean_gap[k][n - 1]);
      if (vals.empty()) continue;
      ComparisonEntry e;
      e.method = static_cast<Method>(k);
      e.n = n;
      e.folds_realized = static_cast<int>(vals.size());
      const double count = static_cast<double>(vals.size());
      e.mean_gap = std::accumulate(vals.begin(), vals.end(), 0.0) / count;
      if (vals.size() >= 2) {
        double ss = 0.0;
        for (double v : vals) ss += (v - e.mean_gap) * (v - e.mean_gap);
        e.stderr_gap = std::sqrt(ss / (count - 1.0)) / std::sqrt(count);
      } else {
        e.stderr_gap = NAN;
      }
      out.entries.push_back(e);
    }
  }
  return out;
}

}  // namespace airt::portfolio
