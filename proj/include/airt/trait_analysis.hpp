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

#ifndef AIRT_TRAIT_ANALYSIS_HPP_
#define AIRT_TRAIT_ANALYSIS_HPP_

#include <string>
#include <vector>

#include <Eigen/Core>

#include "airt/metrics.hpp"

namespace airt::trait {

// Per-algorithm performance curves over the dataset-difficulty spectrum.
struct TraitCurveSet {
  std::vector<std::string> algorithm_names;
  std::vector<double> grid;   // M evenly spaced points on [min delta, max delta]
  Eigen::MatrixXd curves;     // n x M
  std::vector<double> lambdas;
  std::vector<bool> linear_fallback;
  Eigen::VectorXd delta;      // difficulty of every instance

  int algorithms() const { return static_cast<int>(curves.rows()); }
  int points() const { return static_cast<int>(grid.size()); }
};

struct CurveOptions {
  int grid_points = 101;
};

// Fits one smoothing spline per column of `y` (higher-is-better scale)
// against delta. Columns fall back to a least-squares line, flagged in
// `linear_fallback`, when delta has fewer than four distinct values.
TraitCurveSet fit_curves(const metrics::DatasetDifficulty& delta,
                         const Eigen::MatrixXd& y,
                         const std::vector<std::string>& names = {},
                         const CurveOptions& options = {});

// Closed difficulty interval covered by grid points [first, last], widened by
// half a grid cell on each side and clipped to the grid range.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  int first = 0;
  int last = 0;
};

struct StrengthReport {
  double epsilon = 0.0;
  std::vector<std::string> algorithm_names;
  std::vector<std::vector<Interval>> strengths;
  std::vector<std::vector<Interval>> weaknesses;
  // Grid membership masks, n x M.
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> strong;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> weak;
  std::vector<double> lto;
};

// Index of the grid cell holding `delta`: cells are [g_k - d/2, g_k + d/2),
// clamped at both ends.
int grid_cell(const std::vector<double>& grid, double delta);

StrengthReport strengths_weaknesses(const TraitCurveSet& curves,
                                    double epsilon);

// Algorithms with non-empty strengths, ordered by LTO (descending), then
// difficulty limit (descending), then name. Returns algorithm indices.
std::vector<int> airt_portfolio(const StrengthReport& report,
                                const std::vector<double>& difficulty_limits);

}  // namespace airt::trait

#endif  // AIRT_TRAIT_ANALYSIS_HPP_
