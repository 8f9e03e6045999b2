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

#include "airt/crm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "airt/error.hpp"

namespace airt::crm {
namespace {

constexpr double kVarianceEpsilon = 1e-20;

std::string item_name(std::span<const std::string> names, int j) {
  return j < static_cast<int>(names.size()) ? names[j]
                                            : "item " + std::to_string(j);
}

void check_strictly_increasing(std::span<const double> grid, const char* what) {
  if (grid.empty())
    throw ConfigError("crm", std::string(what) + " grid is empty");
  for (size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1]))
      throw ConfigError("crm",
                        std::string(what) + " grid must be strictly increasing");
}

// Column means and variances of z; fixed for the whole fit.
void column_moments(const Eigen::MatrixXd& z, MomentSummary& m) {
  const double n = static_cast<double>(z.rows());
  m.mean_z = z.colwise().mean().transpose();
  m.var_z.resize(z.cols());
  for (Eigen::Index j = 0; j < z.cols(); ++j)
    m.var_z[j] = (z.col(j).array() - m.mean_z[j]).square().sum() / n;
}

// Sum_i (z_ij - M_j)(mu_i - M(mu)) equals z_j' (mu - M(mu)) because the
// centred mu sums to zero, so z need not be centred.
void trait_moments(const Eigen::MatrixXd& z, const TraitPosterior& post,
                   MomentSummary& m) {
  const double n = static_cast<double>(z.rows());
  m.mean_mu = post.mean.mean();
  const Eigen::VectorXd muc = post.mean.array() - m.mean_mu;
  m.var_mu = muc.squaredNorm() / n;
  m.cov_z_mu = z.transpose() * muc / n;
}

ItemParameters solve_items(const MomentSummary& m, double variance,
                           const FitConfig& cfg,
                           std::vector<FitWarning>* warnings,
                           std::span<const std::string> names) {
  const int n = static_cast<int>(m.mean_z.size());
  const double spread = m.var_mu + variance;
  ItemParameters out(n);
  for (int j = 0; j < n; ++j) {
    if (m.var_z[j] <= kVarianceEpsilon)
      throw DegenerateItemError("crm", item_name(names, j), j);
    double cov = m.cov_z_mu[j];
    if (cov == 0.0) {
      cov = 1e-12 * std::sqrt(m.var_z[j] * std::max(m.var_mu, 1e-300));
      if (warnings)
        warnings->push_back({0, j, item_name(names, j) +
                                       ": zero covariance with the trait"});
    }
    const double gamma = spread / cov;
    const double beta = m.mean_mu - gamma * m.mean_z[j];
    double radicand = gamma * gamma * m.var_z[j] - spread;
    if (radicand < cfg.radicand_floor) {
      if (warnings)
        warnings->push_back(
            {0, j, item_name(names, j) + ": discrimination radicand " +
                       std::to_string(radicand) + " floored"});
      radicand = cfg.radicand_floor;
    }
    const double alpha = std::copysign(1.0 / std::sqrt(radicand), gamma);
    out.set(j, {alpha, beta, gamma});
  }
  return out;
}

double marginal_log_likelihood(const Eigen::MatrixXd& z,
                               const ItemParameters& params,
                               const PriorConfig& prior,
                               const TraitPosterior& post) {
  // log p(z_i) = log f(z_i | t) + log prior(t) - log posterior(t) at any t;
  // evaluate at the posterior mean.
  const double log2pi = std::log(2.0 * std::numbers::pi);
  const double s2p = prior.sigma * prior.sigma;
  double per_item_const = 0.0;
  for (int j = 0; j < params.size(); ++j)
    per_item_const +=
        std::log(std::abs(params.alpha[j] * params.gamma[j])) - 0.5 * log2pi;
  double ll = z.rows() * (per_item_const - 0.5 * std::log(s2p) +
                          0.5 * std::log(post.variance));
  for (int j = 0; j < params.size(); ++j) {
    const double a = params.alpha[j];
    ll -= 0.5 * a * a *
          (post.mean.array() - params.beta[j] -
           params.gamma[j] * z.col(j).array())
              .square()
              .sum();
  }
  ll -= (post.mean.array() - prior.mu).square().sum() / (2.0 * s2p);
  return ll;
}

// One blocked pass over z that does the E-step for `params`, evaluates the
// marginal log-likelihood at the new posterior, and refreshes the trait
// moments of `m` for the next M-step. Each row block stays in cache while it
// is visited several times, so z is streamed from memory once per cycle.
double fused_cycle(const Eigen::MatrixXd& z, const ItemParameters& params,
                   const PriorConfig& prior, TraitPosterior& post,
                   MomentSummary& m) {
  constexpr Eigen::Index kBlock = 64;
  const Eigen::Index rows = z.rows(), cols = z.cols();
  const double n = static_cast<double>(rows);
  const Eigen::ArrayXd a2 = params.alpha.array().square();
  const Eigen::VectorXd w = (a2 * params.gamma.array()).matrix();
  const double s2p = prior.sigma * prior.sigma;
  const double prior_precision = 1.0 / s2p;
  post.variance = 1.0 / (a2.sum() + prior_precision);
  const double offset =
      (a2 * params.beta.array()).sum() + prior.mu * prior_precision;
  post.mean.resize(rows);

  const double shift = m.mean_mu;
  double rss = 0.0, prior_ss = 0.0, s1 = 0.0, s2 = 0.0;
  Eigen::VectorXd cross = Eigen::VectorXd::Zero(cols);
  for (Eigen::Index r0 = 0; r0 < rows; r0 += kBlock) {
    const Eigen::Index len = std::min(kBlock, rows - r0);
    const auto zb = z.middleRows(r0, len);
    auto mu = post.mean.segment(r0, len);
    mu.noalias() = zb * w;
    mu = post.variance * (mu.array() + offset).matrix();
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto col = zb.col(j).array();
      rss += a2[j] * (mu.array() - params.beta[j] - params.gamma[j] * col)
                         .square()
                         .sum();
      cross[j] += ((col - m.mean_z[j]) * mu.array()).sum();
    }
    s1 += (mu.array() - shift).sum();
    s2 += (mu.array() - shift).square().sum();
    prior_ss += (mu.array() - prior.mu).square().sum();
  }
  m.mean_mu = shift + s1 / n;
  m.var_mu = std::max(s2 / n - (s1 / n) * (s1 / n), 0.0);
  m.cov_z_mu = cross / n;

  const double log2pi = std::log(2.0 * std::numbers::pi);
  double per_item_const = 0.0;
  for (Eigen::Index j = 0; j < cols; ++j)
    per_item_const +=
        std::log(std::abs(params.alpha[j] * params.gamma[j])) - 0.5 * log2pi;
  return n * (per_item_const - 0.5 * std::log(s2p) +
              0.5 * std::log(post.variance)) -
         0.5 * rss - prior_ss / (2.0 * s2p);
}

}  // namespace

bool ItemParameters::valid() const {
  for (int j = 0; j < size(); ++j) {
    if (alpha[j] == 0.0 || gamma[j] == 0.0) return false;
    if ((alpha[j] > 0) != (gamma[j] > 0)) return false;
  }
  return true;
}

MomentSummary moments(const Eigen::MatrixXd& z, const TraitPosterior& post) {
  MomentSummary m;
  column_moments(z, m);
  trait_moments(z, post, m);
  return m;
}

TraitPosterior e_step(const Eigen::MatrixXd& z, const ItemParameters& params,
                      const PriorConfig& prior) {
  const Eigen::ArrayXd a2 = params.alpha.array().square();
  const double prior_precision = 1.0 / (prior.sigma * prior.sigma);
  TraitPosterior post;
  post.variance = 1.0 / (a2.sum() + prior_precision);
  // sum_j alpha_j^2 (beta_j + gamma_j z_ij)
  Eigen::VectorXd weighted =
      z * (a2 * params.gamma.array()).matrix() +
      Eigen::VectorXd::Constant(z.rows(), (a2 * params.beta.array()).sum());
  post.mean = post.variance *
              (weighted.array() + prior.mu * prior_precision).matrix();
  return post;
}

ItemParameters m_step(const Eigen::MatrixXd& z, const TraitPosterior& post,
                      const FitConfig& cfg, std::vector<FitWarning>* warnings,
                      std::span<const std::string> names) {
  return solve_items(moments(z, post), post.variance, cfg, warnings, names);
}

double expected_log_likelihood(const Eigen::MatrixXd& z,
                               const ItemParameters& params,
                               const TraitPosterior& post) {
  const double n_inst = static_cast<double>(z.rows());
  double ll = 0.0;
  for (int j = 0; j < params.size(); ++j) {
    const double a = params.alpha[j], b = params.beta[j], g = params.gamma[j];
    ll += n_inst * (std::log(std::abs(a)) + std::log(std::abs(g)));
    Eigen::ArrayXd r = b + g * z.col(j).array() - post.mean.array();
    ll -= 0.5 * a * a * (r.square().sum() + n_inst * post.variance);
  }
  return ll;
}

double marginal_log_likelihood(const Eigen::MatrixXd& z,
                               const ItemParameters& params,
                               const PriorConfig& prior) {
  return marginal_log_likelihood(z, params, prior, e_step(z, params, prior));
}

TraitPosterior initial_posterior(const Eigen::MatrixXd& z,
                                 const PriorConfig& prior) {
  Eigen::VectorXd row_mean = z.rowwise().mean();
  const double mean = row_mean.mean();
  const double sd =
      std::sqrt((row_mean.array() - mean).square().sum() / row_mean.size());
  if (!(sd > 0.0))
    throw FitError("crm", "instances are indistinguishable: every instance "
                          "has the same mean response");
  TraitPosterior post;
  post.mean = (row_mean.array() - mean) / sd;
  post.variance = prior.sigma * prior.sigma;
  return post;
}

CrmModel fit(const TransformedResponses& responses, const PriorConfig& prior,
             const FitConfig& cfg, std::span<const std::string> names) {
  const Eigen::MatrixXd& z = responses.z;
  const int n_inst = static_cast<int>(z.rows());
  const int n_items = static_cast<int>(z.cols());
  if (cfg.max_cycles < 1) throw ConfigError("crm", "max_cycles must be >= 1");
  if (!(cfg.loglik_tolerance > 0.0) || !(cfg.radicand_floor > 0.0))
    throw ConfigError("crm", "tolerances must be positive");
  if (!(prior.sigma > 0.0)) throw ConfigError("crm", "prior sigma must be > 0");
  if (n_inst < 2 || n_items < 2)
    throw FitError("crm", "need at least 2 instances and 2 algorithms");
  if (!z.allFinite()) throw FitError("crm", "response matrix is not finite");

  CrmModel model;
  model.prior = prior;
  model.config = cfg;
  model.degenerate.assign(n_items, false);
  for (int j = 0; j < n_items; ++j)
    model.algorithm_names.push_back(item_name(names, j));

  std::vector<int> active;
  Eigen::VectorXd mean_z = z.colwise().mean().transpose();
  for (int j = 0; j < n_items; ++j) {
    double v = (z.col(j).array() - mean_z[j]).square().sum() / n_inst;
    if (v <= kVarianceEpsilon) {
      model.degenerate[j] = true;
      model.warnings.push_back(
          {0, j, model.algorithm_names[j] +
                     ": constant performance, excluded from the fit"});
    } else {
      active.push_back(j);
    }
  }
  if (active.size() < 2)
    throw FitError("crm", "fewer than two algorithms have varying performance");

  std::vector<std::string> active_names;
  for (int j : active) active_names.push_back(model.algorithm_names[j]);
  Eigen::MatrixXd subset;
  if (static_cast<int>(active.size()) < n_items) {
    subset.resize(n_inst, static_cast<Eigen::Index>(active.size()));
    for (size_t k = 0; k < active.size(); ++k)
      subset.col(static_cast<Eigen::Index>(k)) = z.col(active[k]);
  }
  const Eigen::MatrixXd& za = subset.size() ? subset : z;

  TraitPosterior post = initial_posterior(za, prior);
  MomentSummary mom;
  column_moments(za, mom);
  trait_moments(za, post, mom);
  ItemParameters params;
  for (int cycle = 1; cycle <= cfg.max_cycles; ++cycle) {
    std::vector<FitWarning> cycle_warnings;
    params = solve_items(mom, post.variance, cfg, &cycle_warnings, active_names);
    for (auto& w : cycle_warnings) {
      w.cycle = cycle;
      w.item = active[w.item];
      model.warnings.push_back(std::move(w));
    }
    const double ll = fused_cycle(za, params, prior, post, mom);
    if (!std::isfinite(ll))
      throw NumericalError("crm",
                           "log-likelihood is not finite at cycle " +
                               std::to_string(cycle),
                           cycle);
    model.loglik_trace.push_back(ll);
    model.cycles_used = cycle;
    const size_t t = model.loglik_trace.size();
    if (t >= 2 && std::abs(ll - model.loglik_trace[t - 2]) <
                      cfg.loglik_tolerance) {
      model.converged = true;
      break;
    }
  }

  model.params = ItemParameters(n_items);
  model.params.alpha.setZero();
  model.params.beta.setZero();
  model.params.gamma.setZero();
  for (size_t k = 0; k < active.size(); ++k)
    model.params.set(active[k], params.item(static_cast<int>(k)));
  model.posterior = post;
  model.theta = latent_trait(za, params);
  return model;
}

double density(double z, double theta, const Item& item) {
  const double r = theta - item.beta - item.gamma * z;
  return item.alpha * item.gamma / std::sqrt(2.0 * std::numbers::pi) *
         std::exp(-0.5 * item.alpha * item.alpha * r * r);
}

Eigen::MatrixXd heatmap_grid(const Item& item, std::span<const double> z_grid,
                             std::span<const double> theta_grid) {
  check_strictly_increasing(z_grid, "z");
  check_strictly_increasing(theta_grid, "theta");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(z_grid.size()),
                      static_cast<Eigen::Index>(theta_grid.size()));
  for (size_t a = 0; a < z_grid.size(); ++a)
    for (size_t b = 0; b < theta_grid.size(); ++b)
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          density(z_grid[a], theta_grid[b], item);
  return out;
}

Eigen::VectorXd latent_trait(const Eigen::MatrixXd& z,
                             const ItemParameters& params) {
  const Eigen::ArrayXd a2 = params.alpha.array().square();
  const double total = a2.sum();
  if (!(total > 0.0))
    throw FitError("crm", "latent trait needs a nonzero discrimination");
  Eigen::VectorXd num =
      z * (a2 * params.gamma.array()).matrix() +
      Eigen::VectorXd::Constant(z.rows(), (a2 * params.beta.array()).sum());
  return num / total;
}

double predict(double theta, const Item& item, double k) {
  const double zstar = (theta - item.beta) / item.gamma;
  return k / (1.0 + std::exp(-zstar));
}

Eigen::MatrixXd predict_matrix(const CrmModel& model,
                               const Eigen::MatrixXd& x) {
  Eigen::MatrixXd out(x.rows(), x.cols());
  for (int j = 0; j < model.items(); ++j) {
    if (model.degenerate[j]) {
      out.col(j) = x.col(j);
      continue;
    }
    const Item item = model.params.item(j);
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      out(i, j) = predict(model.theta[i], item);
  }
  return out;
}

}  // namespace airt::crm
