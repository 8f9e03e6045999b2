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

#include "airt/goodness.hpp"

#include <algorithm>
#include <cmath>

#include "airt/error.hpp"

namespace airt::goodness {

ResidualSet residuals(const Eigen::MatrixXd& x, const Eigen::MatrixXd& x_hat,
                      ResidualScaling scaling) {
  if (x.rows() != x_hat.rows() || x.cols() != x_hat.cols())
    throw ConfigError("goodness", "observed and predicted shapes differ");
  ResidualSet r;
  r.e = x - x_hat;
  Eigen::MatrixXd abs_e = r.e.cwiseAbs();
  r.rho.resize(x.rows(), x.cols());
  if (scaling == ResidualScaling::kGlobal) {
    const double worst = abs_e.size() ? abs_e.maxCoeff() : 0.0;
    const double c = worst > 0.0 ? 1.0 / worst : 1.0;
    r.c.push_back(c);
    r.rho = (abs_e * c).cwiseMin(1.0);
  } else {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const double worst = abs_e.col(j).maxCoeff();
      const double c = worst > 0.0 ? 1.0 / worst : 1.0;
      r.c.push_back(c);
      r.rho.col(j) = (abs_e.col(j) * c).cwiseMin(1.0);
    }
  }
  return r;
}

ResidualSet residuals(const Eigen::MatrixXd& x, const crm::CrmModel& model,
                      ResidualScaling scaling) {
  if (x.rows() != model.instances() || x.cols() != model.items())
    throw ConfigError("goodness", "matrix and model dimensions differ");
  return residuals(x, crm::predict_matrix(model, x), scaling);
}

double aucdf(const Eigen::VectorXd& rho, int grid_points) {
  if (grid_points < 2) throw ConfigError("goodness", "grid needs 2+ points");
  std::vector<double> sorted(rho.data(), rho.data() + rho.size());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  if (n == 0) return 0.0;
  auto cdf = [&](double t) {
    return static_cast<double>(
               std::upper_bound(sorted.begin(), sorted.end(), t) -
               sorted.begin()) /
           n;
  };
  const double step = 1.0 / (grid_points - 1);
  double area = 0.0, prev = cdf(0.0);
  for (int k = 1; k < grid_points; ++k) {
    const double t = k == grid_points - 1 ? 1.0 : k * step;
    const double cur = cdf(t);
    area += 0.5 * (prev + cur) * step;
    prev = cur;
  }
  return std::clamp(area, 0.0, 1.0);
}

EffectivenessCurve effectiveness(const Eigen::VectorXd& x, CurveKind kind) {
  if (!x.allFinite())
    throw DomainError("goodness", "performance values must be finite");
  EffectivenessCurve curve;
  curve.kind = kind;
  const Eigen::Index n = x.size();
  if (n == 0) throw ConfigError("goodness", "no performance values");
  const double best = x.maxCoeff();
  const double range = best - x.minCoeff();
  std::vector<double> t(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    t[i] = range > 0.0 ? std::clamp((best - x[i]) / range, 0.0, 1.0) : 0.0;
  curve.degenerate = !(range > 0.0);
  std::sort(t.begin(), t.end());

  // Sample the CDF of t at 0, every distinct value, and 1.
  std::vector<double> ells{0.0};
  for (double v : t)
    if (v > ells.back()) ells.push_back(v);
  if (ells.back() < 1.0) ells.push_back(1.0);
  for (double ell : ells) {
    const double frac =
        static_cast<double>(std::upper_bound(t.begin(), t.end(), ell) -
                            t.begin()) /
        static_cast<double>(n);
    curve.points.emplace_back(ell, frac);
  }
  double area = 0.0;
  for (size_t k = 1; k < curve.points.size(); ++k) {
    const auto& [l0, f0] = curve.points[k - 1];
    const auto& [l1, f1] = curve.points[k];
    area += 0.5 * (f0 + f1) * (l1 - l0);
  }
  curve.area = std::clamp(area, 0.0, 1.0);
  return curve;
}

GoodnessReport evaluate(const Eigen::MatrixXd& x, const crm::CrmModel& model,
                        ResidualScaling scaling) {
  if (x.rows() != model.instances() || x.cols() != model.items())
    throw ConfigError("goodness", "matrix and model dimensions differ");
  GoodnessReport report;
  const Eigen::MatrixXd x_hat = crm::predict_matrix(model, x);
  report.residuals = residuals(x, x_hat, scaling);
  for (int j = 0; j < model.items(); ++j) {
    GoodnessRow row;
    row.algorithm = model.algorithm_names[j];
    row.mse = report.residuals.e.col(j).squaredNorm() /
              static_cast<double>(x.rows());
    row.aucdf = aucdf(report.residuals.rho.col(j));
    auto actual = effectiveness(x.col(j), CurveKind::kActual);
    auto predicted = effectiveness(x_hat.col(j), CurveKind::kPredicted);
    row.auaec = actual.area;
    row.aupec = predicted.area;
    row.abs_diff = std::abs(row.auaec - row.aupec);
    if (model.degenerate[j]) row.warnings.push_back("degenerate item");
    if (actual.degenerate)
      row.warnings.push_back("actual effectiveness has zero range");
    if (predicted.degenerate)
      row.warnings.push_back("predicted effectiveness has zero range");
    report.actual.push_back(std::move(actual));
    report.predicted.push_back(std::move(predicted));
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace airt::goodness
