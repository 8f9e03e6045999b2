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

#ifndef AIRT_GOODNESS_HPP_
#define AIRT_GOODNESS_HPP_

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "airt/crm.hpp"

namespace airt::goodness {

enum class ResidualScaling {
  kGlobal,        // one constant for the whole portfolio
  kPerAlgorithm,  // each algorithm's worst residual maps to 1
};

struct ResidualSet {
  Eigen::MatrixXd e;    // x - x_hat
  Eigen::MatrixXd rho;  // c * |e|, in [0, 1]
  // Scaling constants: one entry for global scaling, one per algorithm
  // otherwise. 1 when every residual in scope is zero.
  std::vector<double> c;
};

ResidualSet residuals(const Eigen::MatrixXd& x, const Eigen::MatrixXd& x_hat,
                      ResidualScaling scaling = ResidualScaling::kGlobal);
ResidualSet residuals(const Eigen::MatrixXd& x, const crm::CrmModel& model,
                      ResidualScaling scaling = ResidualScaling::kGlobal);

// Area under the empirical CDF of rho on [0, 1], by the trapezoid rule over
// `grid_points` evenly spaced evaluation points.
double aucdf(const Eigen::VectorXd& rho, int grid_points = 1001);

enum class CurveKind { kActual, kPredicted };

struct EffectivenessCurve {
  CurveKind kind = CurveKind::kActual;
  // (tolerance, fraction of instances within that tolerance of the best).
  std::vector<std::pair<double, double>> points;
  double area = 0.0;
  bool degenerate = false;  // zero range: every value is the best
};

EffectivenessCurve effectiveness(const Eigen::VectorXd& x,
                                 CurveKind kind = CurveKind::kActual);

struct GoodnessRow {
  std::string algorithm;
  double mse = 0.0;
  double aucdf = 0.0;
  double auaec = 0.0;
  double aupec = 0.0;
  double abs_diff = 0.0;
  std::vector<std::string> warnings;
};

struct GoodnessReport {
  std::vector<GoodnessRow> rows;
  ResidualSet residuals;
  std::vector<EffectivenessCurve> actual;
  std::vector<EffectivenessCurve> predicted;
};

// `x` is the observed (0,1)-scale performance the model was fitted on.
GoodnessReport evaluate(const Eigen::MatrixXd& x, const crm::CrmModel& model,
                        ResidualScaling scaling = ResidualScaling::kGlobal);

}  // namespace airt::goodness

#endif  // AIRT_GOODNESS_HPP_
