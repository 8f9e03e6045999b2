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

#include "airt/trait_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "airt/error.hpp"
#include "airt/spline.hpp"

namespace airt::trait {
namespace {

std::vector<Interval> runs_to_intervals(
    const Eigen::Array<bool, Eigen::Dynamic, 1>& mask,
    const std::vector<double>& grid) {
  std::vector<Interval> out;
  const int m = static_cast<int>(grid.size());
  const double half = m > 1 ? 0.5 * (grid[1] - grid[0]) : 0.0;
  int k = 0;
  while (k < m) {
    if (!mask[k]) {
      ++k;
      continue;
    }
    int l = k;
    while (l + 1 < m && mask[l + 1]) ++l;
    Interval iv;
    iv.first = k;
    iv.last = l;
    iv.lo = std::max(grid.front(), grid[k] - half);
    iv.hi = std::min(grid.back(), grid[l] + half);
    out.push_back(iv);
    k = l + 1;
  }
  return out;
}

}  // namespace

TraitCurveSet fit_curves(const metrics::DatasetDifficulty& delta,
                         const Eigen::MatrixXd& y,
                         const std::vector<std::string>& names,
                         const CurveOptions& options) {
  const Eigen::VectorXd& d = delta.delta;
  if (d.size() != y.rows())
    throw ConfigError("trait_analysis",
                      "difficulty vector and performance matrix differ in "
                      "instance count");
  if (options.grid_points < 2)
    throw ConfigError("trait_analysis", "grid needs at least 2 points");
  if (d.size() == 0) throw ConfigError("trait_analysis", "no instances");

  TraitCurveSet out;
  out.delta = d;
  const int n = static_cast<int>(y.cols());
  for (int j = 0; j < n; ++j)
    out.algorithm_names.push_back(
        j < static_cast<int>(names.size()) ? names[j] : std::to_string(j));

  const double lo = d.minCoeff(), hi = d.maxCoeff();
  const int m = hi > lo ? options.grid_points : 1;
  out.grid.resize(m);
  for (int k = 0; k < m; ++k)
    out.grid[k] = m == 1 ? lo : lo + (hi - lo) * k / (m - 1);
  if (m > 1) out.grid.back() = hi;

  out.curves.resize(n, m);
  std::vector<double> xs(d.data(), d.data() + d.size());
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd col = y.col(j);
    std::vector<double> ys(col.data(), col.data() + col.size());
    spline::SmoothingSpline s;
    bool fallback = false;
    try {
      s = spline::fit_smoothing_spline(xs, ys);
    } catch (const SplineError&) {
      s = spline::fit_line(xs, ys);
      fallback = true;
    }
    auto values = s.evaluate(out.grid);
    for (int k = 0; k < m; ++k) out.curves(j, k) = values[k];
    out.lambdas.push_back(s.lambda());
    out.linear_fallback.push_back(fallback);
  }
  if (!out.curves.allFinite())
    throw SplineError("trait_analysis", "fitted curves are not finite");
  return out;
}

int grid_cell(const std::vector<double>& grid, double delta) {
  const int m = static_cast<int>(grid.size());
  if (m <= 1) return 0;
  const double step = (grid.back() - grid.front()) / (m - 1);
  const int k =
      static_cast<int>(std::floor((delta - grid.front()) / step + 0.5));
  return std::clamp(k, 0, m - 1);
}

StrengthReport strengths_weaknesses(const TraitCurveSet& curves,
                                    double epsilon) {
  if (!(epsilon >= 0.0))
    throw ConfigError("trait_analysis", "epsilon must be >= 0");
  const int n = curves.algorithms();
  const int m = curves.points();
  StrengthReport r;
  r.epsilon = epsilon;
  r.algorithm_names = curves.algorithm_names;
  r.strong.resize(n, m);
  r.weak.resize(n, m);
  for (int k = 0; k < m; ++k) {
    const double top = curves.curves.col(k).maxCoeff();
    const double bottom = curves.curves.col(k).minCoeff();
    for (int j = 0; j < n; ++j) {
      const double h = curves.curves(j, k);
      r.strong(j, k) = std::abs(h - top) <= epsilon;
      r.weak(j, k) = std::abs(h - bottom) <= epsilon;
    }
  }
  std::vector<int> cells;
  for (Eigen::Index i = 0; i < curves.delta.size(); ++i)
    cells.push_back(grid_cell(curves.grid, curves.delta[i]));
  const double total = static_cast<double>(cells.size());
  for (int j = 0; j < n; ++j) {
    Eigen::Array<bool, Eigen::Dynamic, 1> srow = r.strong.row(j).transpose();
    Eigen::Array<bool, Eigen::Dynamic, 1> wrow = r.weak.row(j).transpose();
    r.strengths.push_back(runs_to_intervals(srow, curves.grid));
    r.weaknesses.push_back(runs_to_intervals(wrow, curves.grid));
    int count = 0;
    for (int c : cells) count += r.strong(j, c) ? 1 : 0;
    r.lto.push_back(total > 0 ? count / total : 0.0);
  }
  return r;
}

std::vector<int> airt_portfolio(const StrengthReport& report,
                                const std::vector<double>& difficulty_limits) {
  std::vector<int> members;
  for (int j = 0; j < static_cast<int>(report.strengths.size()); ++j)
    if (!report.strengths[j].empty()) members.push_back(j);
  auto limit = [&](int j) {
    double v = j < static_cast<int>(difficulty_limits.size())
                   ? difficulty_limits[j]
                   : -INFINITY;
    return std::isnan(v) ? -INFINITY : v;
  };
  std::sort(members.begin(), members.end(), [&](int a, int b) {
    if (report.lto[a] != report.lto[b]) return report.lto[a] > report.lto[b];
    if (limit(a) != limit(b)) return limit(a) > limit(b);
    return report.algorithm_names[a] < report.algorithm_names[b];
  });
  return members;
}

}  // namespace airt::trait
