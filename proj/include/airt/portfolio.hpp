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

#ifndef AIRT_PORTFOLIO_HPP_
#define AIRT_PORTFOLIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "airt/crm.hpp"
#include "airt/ingest.hpp"

namespace airt::portfolio {

struct ShapleyValues {
  std::vector<std::string> algorithm_names;
  Eigen::VectorXd phi;
};

// Shapley values of the per-instance best-performance game, summed over
// instances. `x` must be nonnegative.
ShapleyValues shapley_values(const Eigen::MatrixXd& x,
                             const std::vector<std::string>& names = {});

// Algorithm indices by descending phi, ties by name.
std::vector<int> shapley_ranking(const ShapleyValues& values);

struct TopsetEntry {
  int algorithm = 0;
  int wins = 0;
  double mean = 0.0;
};

// Algorithms by descending count of per-instance wins (ties on an instance
// credit every tied algorithm), then mean performance, then name.
std::vector<TopsetEntry> topset_ranking(
    const Eigen::MatrixXd& x, const std::vector<std::string>& names = {});

// Per-instance shortfall of the portfolio's best value against `best_full`,
// in original units. Throws LookupError for unknown names.
Eigen::VectorXd performance_gap(const Eigen::VectorXd& best_full,
                                const std::vector<std::string>& portfolio,
                                const PerformanceMatrix& y);
Eigen::VectorXd performance_gap(const Eigen::VectorXd& best_full,
                                const std::vector<int>& portfolio,
                                const PerformanceMatrix& y);

enum class Method { kAirt, kShapley, kTopset };
const char* to_string(Method method);

struct CompareOptions {
  int folds = 10;
  std::uint64_t seed = 0;
  // Unset means the scenario default.
  std::optional<TransformConfig> transform;
  crm::PriorConfig prior;
  crm::FitConfig fit;
  int grid_points = 101;
};

struct FoldResult {
  std::vector<int> test_rows;
  std::vector<int> airt;     // ranked algorithm indices
  std::vector<int> shapley;
  std::vector<int> topset;
  int limit = 0;             // largest n evaluated on this fold
  // mean_gap[method][n - 1] for n = 1..limit
  std::vector<std::vector<double>> mean_gap;
};

struct ComparisonEntry {
  Method method = Method::kAirt;
  int n = 0;
  double mean_gap = 0.0;
  double stderr_gap = 0.0;  // NaN when realized in fewer than 2 folds
  int folds_realized = 0;
};

struct PortfolioComparison {
  double epsilon = 0.0;
  int folds = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> algorithm_names;
  std::vector<ComparisonEntry> entries;  // ordered by method, then n
  std::vector<FoldResult> fold_results;
};

// Fold index of every instance: a seeded shuffle dealt round robin.
std::vector<int> assign_folds(int instances, int folds, std::uint64_t seed);

PortfolioComparison cv_compare(const PerformanceMatrix& m, double epsilon,
                               const CompareOptions& options = {});

}  // namespace airt::portfolio

#endif  // AIRT_PORTFOLIO_HPP_
