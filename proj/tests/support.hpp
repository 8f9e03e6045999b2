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


// Independent oracles and generators shared by the test suites.

#ifndef AIRT_TESTS_SUPPORT_HPP_
#define AIRT_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "airt/crm.hpp"

namespace airt::testing {

// Gauss-Hermite nodes and weights for the weight exp(-t^2), by Golub-Welsch.
struct GaussHermite {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  explicit GaussHermite(int n) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(k / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    nodes = es.eigenvalues();
    weights = std::sqrt(M_PI) * es.eigenvectors().row(0).array().square();
  }
};

struct PosteriorMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// Posterior mean and variance of theta for one instance, by quadrature of
// prior x product of item densities. The rule is centred on the likelihood
// mode so narrow likelihoods are still resolved.
inline PosteriorMoments quadrature_posterior(const Eigen::RowVectorXd& z,
                                             const crm::ItemParameters& p,
                                             const crm::PriorConfig& prior,
                                             const GaussHermite& gh) {
  double a2 = 0.0, num = 0.0;
  for (int j = 0; j < p.size(); ++j) {
    const double w = p.alpha[j] * p.alpha[j];
    a2 += w;
    num += w * (p.beta[j] + p.gamma[j] * z[j]);
  }
  const double centre = num / a2;
  const double h = std::min(1.0 / std::sqrt(a2), prior.sigma);
  auto log_target = [&](double th) {
    double s = -0.5 * std::pow((th - prior.mu) / prior.sigma, 2);
    for (int j = 0; j < p.size(); ++j)
      s += std::log(std::abs(p.alpha[j] * p.gamma[j])) -
           0.5 * p.alpha[j] * p.alpha[j] *
               std::pow(th - p.beta[j] - p.gamma[j] * z[j], 2);
    return s;
  };
  const double ref = log_target(centre);
  double m0 = 0.0, m1 = 0.0, m2 = 0.0;
  for (Eigen::Index k = 0; k < gh.nodes.size(); ++k) {
    const double t = gh.nodes[k];
    const double th = centre + std::sqrt(2.0) * h * t;
    const double f = gh.weights[k] * std::exp(log_target(th) - ref + t * t);
    m0 += f;
    m1 += f * th;
    m2 += f * th * th;
  }
  const double mean = m1 / m0;
  return {mean, m2 / m0 - mean * mean};
}

// Minimizes f by Nelder-Mead from x0 with initial simplex scale `step`.
inline Eigen::VectorXd nelder_mead(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x0, double step, int max_iter = 20000,
    double tol = 1e-14) {
  const int d = static_cast<int>(x0.size());
  std::vector<Eigen::VectorXd> s(d + 1, x0);
  for (int i = 0; i < d; ++i) s[i + 1][i] += step;
  std::vector<double> fv(d + 1);
  for (int i = 0; i <= d; ++i) fv[i] = f(s[i]);
  for (int it = 0; it < max_iter; ++it) {
    std::vector<int> idx(d + 1);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    std::vector<Eigen::VectorXd> s2;
    std::vector<double> f2;
    for (int i : idx) {
      s2.push_back(s[i]);
      f2.push_back(fv[i]);
    }
    s = s2;
    fv = f2;
    if (std::abs(fv[d] - fv[0]) <= tol * (1.0 + std::abs(fv[0])) &&
        (s[d] - s[0]).norm() < 1e-10)
      break;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < d; ++i) c += s[i];
    c /= d;
    const Eigen::VectorXd xr = c + (c - s[d]);
    const double fr = f(xr);
    if (fr < fv[0]) {
      const Eigen::VectorXd xe = c + 2.0 * (c - s[d]);
      const double fe = f(xe);
      if (fe < fr) {
        s[d] = xe;
        fv[d] = fe;
      } else {
        s[d] = xr;
        fv[d] = fr;
      }
    } else if (fr < fv[d - 1]) {
      s[d] = xr;
      fv[d] = fr;
    } else {
      const Eigen::VectorXd xc = c + 0.5 * (s[d] - c);
      const double fc = f(xc);
      if (fc < fv[d]) {
        s[d] = xc;
        fv[d] = fc;
      } else {
        for (int i = 1; i <= d; ++i) {
          s[i] = s[0] + 0.5 * (s[i] - s[0]);
          fv[i] = f(s[i]);
        }
      }
    }
  }
  return s[std::min_element(fv.begin(), fv.end()) - fv.begin()];
}

// Expected log-likelihood contribution of one item, coded from the formula.
inline double item_objective(const Eigen::VectorXd& zj,
                             const crm::TraitPosterior& post, double a,
                             double b, double g) {
  const double n = static_cast<double>(zj.size());
  double q = 0.0;
  for (Eigen::Index i = 0; i < zj.size(); ++i)
    q += std::pow(b + g * zj[i] - post.mean[i], 2) + post.variance;
  return n * (std::log(std::abs(a)) + std::log(std::abs(g))) - 0.5 * a * a * q;
}

// Shapley values of v(S) = sum_i max_{j in S} x_ij by enumerating all
// join orders.
inline Eigen::VectorXd brute_force_shapley(const Eigen::MatrixXd& x) {
  const int n = static_cast<int>(x.cols());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(n);
  double perms = 0.0;
  do {
    perms += 1.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      double best = 0.0;
      for (int j : order) {
        const double next = std::max(best, x(i, j));
        phi[j] += next - best;
        best = next;
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return phi / perms;
}

inline double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::ArrayXd da = a.array() - a.mean();
  const Eigen::ArrayXd db = b.array() - b.mean();
  return (da * db).sum() / std::sqrt(da.square().sum() * db.square().sum());
}

inline Eigen::VectorXd ranks(const Eigen::VectorXd& v) {
  std::vector<int> idx(static_cast<size_t>(v.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
  Eigen::VectorXd r(v.size());
  for (size_t k = 0; k < idx.size();) {
    size_t l = k;
    while (l + 1 < idx.size() && v[idx[l + 1]] == v[idx[k]]) ++l;
    for (size_t m = k; m <= l; ++m) r[idx[m]] = 0.5 * (k + l);
    k = l + 1;
  }
  return r;
}

inline double spearman(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return pearson(ranks(a), ranks(b));
}

struct Synthetic {
  crm::ItemParameters truth;
  Eigen::VectorXd theta;
  Eigen::MatrixXd z;
};

// Draws z from the continuous response model: theta ~ N(0,1) and
// theta - beta - gamma z ~ N(0, 1/alpha^2).
inline Synthetic simulate(const crm::ItemParameters& truth, int instances,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Synthetic s{truth, Eigen::VectorXd(instances),
              Eigen::MatrixXd(instances, truth.size())};
  for (int i = 0; i < instances; ++i) s.theta[i] = normal(rng);
  for (int i = 0; i < instances; ++i)
    for (int j = 0; j < truth.size(); ++j) {
      const double e = normal(rng) / std::abs(truth.alpha[j]);
      s.z(i, j) = (s.theta[i] - truth.beta[j] - e) / truth.gamma[j];
    }
  return s;
}

// Random parameters with mixed signs; the first `negative` items are
// anomalous.
inline crm::ItemParameters random_items(int n, int negative,
                                        std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ua(0.8, 2.5), ub(-1.0, 1.0),
      ug(0.6, 1.8);
  crm::ItemParameters p(n);
  for (int j = 0; j < n; ++j) {
    const double sign = j < negative ? -1.0 : 1.0;
    p.alpha[j] = sign * ua(rng);
    p.beta[j] = ub(rng);
    p.gamma[j] = sign * ug(rng);
  }
  return p;
}

}  // namespace airt::testing

#endif  // AIRT_TESTS_SUPPORT_HPP_
