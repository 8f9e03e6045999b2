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

#ifndef AIRT_SPLINE_HPP_
#define AIRT_SPLINE_HPP_

#include <optional>
#include <span>
#include <vector>

namespace airt::spline {

// Natural cubic spline minimising
//   sum_i w_i (y_i - g(x_i))^2 + lambda * integral g''(t)^2 dt
// over distinct knots x_i. Repeated x values are averaged with weight equal
// to their multiplicity. Solved in Reinsch form with banded factorisations,
// O(n) per lambda.
class SmoothingSpline {
 public:
  double operator()(double t) const;
  std::vector<double> evaluate(std::span<const double> t) const;

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& fitted() const { return fitted_; }
  double lambda() const { return lambda_; }
  double gcv() const { return gcv_; }
  // Trace of the smoother matrix (equivalent degrees of freedom).
  double edf() const { return edf_; }
  // True when the data had fewer than four distinct x values and a weighted
  // least-squares line was used instead.
  bool linear_fallback() const { return linear_; }

 private:
  friend SmoothingSpline fit_smoothing_spline(std::span<const double>,
                                              std::span<const double>,
                                              std::optional<double>);
  friend SmoothingSpline fit_line(std::span<const double>,
                                  std::span<const double>);

  std::vector<double> knots_;
  std::vector<double> fitted_;
  std::vector<double> second_;  // g'' at knots, zero at both ends
  double lambda_ = 0.0;
  double gcv_ = 0.0;
  double edf_ = 0.0;
  bool linear_ = false;
  double slope_ = 0.0, intercept_ = 0.0;  // linear fallback only
};

// Fits with `lambda` when given, otherwise chooses it by generalised
// cross-validation over a bounded log-scale range. Throws SplineError when
// there are fewer than four distinct x values.
SmoothingSpline fit_smoothing_spline(std::span<const double> x,
                                     std::span<const double> y,
                                     std::optional<double> lambda = std::nullopt);

// Weighted least-squares line (constant when x has a single distinct value).
SmoothingSpline fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace airt::spline

#endif  // AIRT_SPLINE_HPP_
