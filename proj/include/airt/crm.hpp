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

// Continuous response model with algorithms as items and instances as
// examinees. Each item j has discrimination alpha, difficulty beta and
// scaling gamma; the response density of a logit score z given the trait
// theta is
//
//   f(z | theta) = alpha*gamma / sqrt(2 pi)
//                  * exp(-alpha^2 / 2 * (theta - beta - gamma*z)^2)
//
// with alpha*gamma > 0. Negative alpha (and gamma) marks an item whose
// performance falls as the trait grows.

#ifndef AIRT_CRM_HPP_
#define AIRT_CRM_HPP_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "airt/ingest.hpp"

namespace airt::crm {

struct Item {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 1.0;
};

struct ItemParameters {
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  Eigen::VectorXd gamma;

  ItemParameters() = default;
  explicit ItemParameters(int n)
      : alpha(Eigen::VectorXd::Ones(n)),
        beta(Eigen::VectorXd::Zero(n)),
        gamma(Eigen::VectorXd::Ones(n)) {}

  int size() const { return static_cast<int>(alpha.size()); }
  Item item(int j) const { return {alpha[j], beta[j], gamma[j]}; }
  void set(int j, const Item& it) {
    alpha[j] = it.alpha;
    beta[j] = it.beta;
    gamma[j] = it.gamma;
  }
  // alpha_j != 0, gamma_j != 0 and sign(alpha_j) == sign(gamma_j) for all j.
  bool valid() const;
};

struct PriorConfig {
  double mu = 0.0;
  double sigma = 1.0;
};

// Gaussian posterior of every trait; the variance is shared by all instances.
struct TraitPosterior {
  Eigen::VectorXd mean;
  double variance = 1.0;
};

struct FitConfig {
  int max_cycles = 200;
  double loglik_tolerance = 1e-4;
  double radicand_floor = 1e-6;
};

struct FitWarning {
  int cycle = 0;
  int item = -1;
  std::string message;
};

// Population (divide-by-N) moments of the responses and posterior means.
struct MomentSummary {
  Eigen::VectorXd mean_z;  // M_j(z)
  double mean_mu = 0.0;    // M(mu)
  Eigen::VectorXd var_z;   // V_j(z)
  double var_mu = 0.0;     // V(mu)
  Eigen::VectorXd cov_z_mu;  // C_j(z, mu)
};

struct CrmModel {
  std::vector<std::string> algorithm_names;
  ItemParameters params;
  TraitPosterior posterior;
  Eigen::VectorXd theta;
  std::vector<double> loglik_trace;
  bool converged = false;
  int cycles_used = 0;
  // Zero-variance items excluded from the fit. Their parameters are zero.
  std::vector<bool> degenerate;
  std::vector<FitWarning> warnings;
  PriorConfig prior;
  FitConfig config;

  int items() const { return params.size(); }
  int instances() const { return static_cast<int>(theta.size()); }
};

MomentSummary moments(const Eigen::MatrixXd& z, const TraitPosterior& post);

TraitPosterior e_step(const Eigen::MatrixXd& z, const ItemParameters& params,
                      const PriorConfig& prior = {});

// Closed-form maximiser of the expected complete-data log-likelihood. Throws
// DegenerateItemError when a column of z is constant. Radicand floor events
// are appended to `warnings` when given.
ItemParameters m_step(const Eigen::MatrixXd& z, const TraitPosterior& post,
                      const FitConfig& cfg = {},
                      std::vector<FitWarning>* warnings = nullptr,
                      std::span<const std::string> names = {});

// Expected complete-data log-likelihood under flat item priors, constants
// dropped:
//   N sum_j (ln|alpha_j| + ln|gamma_j|)
//     - 1/2 sum_i sum_j alpha_j^2 ((beta_j + gamma_j z_ij - mu_i)^2 + s^2)
double expected_log_likelihood(const Eigen::MatrixXd& z,
                               const ItemParameters& params,
                               const TraitPosterior& post);

// Exact marginal log-likelihood of z with the trait integrated out against
// the prior. This is the quantity EM increases monotonically.
double marginal_log_likelihood(const Eigen::MatrixXd& z,
                               const ItemParameters& params,
                               const PriorConfig& prior = {});

CrmModel fit(const TransformedResponses& responses, const PriorConfig& prior = {},
             const FitConfig& cfg = {},
             std::span<const std::string> names = {});

// Starting posterior: standardised per-instance mean of z, prior variance.
TraitPosterior initial_posterior(const Eigen::MatrixXd& z,
                                 const PriorConfig& prior);

double density(double z, double theta, const Item& item);

// Rows follow z_grid, columns follow theta_grid.
Eigen::MatrixXd heatmap_grid(const Item& item, std::span<const double> z_grid,
                             std::span<const double> theta_grid);

Eigen::VectorXd latent_trait(const Eigen::MatrixXd& z,
                             const ItemParameters& params);

// Most probable response for trait theta, mapped back to (0, k).
double predict(double theta, const Item& item, double k = 1.0);

// Predicted (0,1)-scale performance for every cell of a fitted model.
// Degenerate items predict their constant observed value `x`.
Eigen::MatrixXd predict_matrix(const CrmModel& model, const Eigen::MatrixXd& x);

}  // namespace airt::crm

#endif  // AIRT_CRM_HPP_
