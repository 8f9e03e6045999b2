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

#include "airt/spline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "airt/error.hpp"

namespace airt::spline {
namespace {

struct Grouped {
  std::vector<double> x, y, w;
};

// Sorts by x and merges repeated x values into their weighted mean.
Grouped group(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw SplineError("trait_analysis", "x and y differ in length");
  std::vector<size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return x[a] < x[b]; });
  Grouped g;
  for (size_t idx : order) {
    if (!std::isfinite(x[idx]) || !std::isfinite(y[idx]))
      throw SplineError("trait_analysis", "non-finite input");
    if (!g.x.empty() && x[idx] == g.x.back()) {
      double& w = g.w.back();
      g.y.back() = (g.y.back() * w + y[idx]) / (w + 1.0);
      w += 1.0;
    } else {
      g.x.push_back(x[idx]);
      g.y.push_back(y[idx]);
      g.w.push_back(1.0);
    }
  }
  return g;
}

// Symmetric pentadiagonal matrix: diagonal b0, first and second
// off-diagonals b1, b2, with its LDL^T factorisation.
struct Banded {
  std::vector<double> b0, b1, b2;
  std::vector<double> d, l1, l2;

  void factor() {
    const size_t m = b0.size();
    d.assign(m, 0.0);
    l1.assign(m, 0.0);
    l2.assign(m, 0.0);
    for (size_t k = 0; k < m; ++k) {
      double dk = b0[k];
      if (k >= 1) dk -= l1[k - 1] * l1[k - 1] * d[k - 1];
      if (k >= 2) dk -= l2[k - 2] * l2[k - 2] * d[k - 2];
      d[k] = dk;
      if (k + 1 < m) {
        double v = b1[k];
        if (k >= 1) v -= l2[k - 1] * l1[k - 1] * d[k - 1];
        l1[k] = v / dk;
      }
      if (k + 2 < m) l2[k] = b2[k] / dk;
    }
  }

  std::vector<double> solve(std::vector<double> r) const {
    const size_t m = r.size();
    for (size_t k = 0; k < m; ++k) {
      if (k >= 1) r[k] -= l1[k - 1] * r[k - 1];
      if (k >= 2) r[k] -= l2[k - 2] * r[k - 2];
    }
    for (size_t k = 0; k < m; ++k) r[k] /= d[k];
    for (size_t k = m; k-- > 0;) {
      if (k + 1 < m) r[k] -= l1[k] * r[k + 1];
      if (k + 2 < m) r[k] -= l2[k] * r[k + 2];
    }
    return r;
  }

  // Entries of the inverse within the band: s0[k] = S(k,k),
  // s1[k] = S(k,k+1), s2[k] = S(k,k+2).
  void inverse_band(std::vector<double>& s0, std::vector<double>& s1,
                    std::vector<double>& s2) const {
    const size_t m = d.size();
    s0.assign(m, 0.0);
    s1.assign(m, 0.0);
    s2.assign(m, 0.0);
    for (size_t k = m; k-- > 0;) {
      const double a = k + 1 < m ? l1[k] : 0.0;
      const double b = k + 2 < m ? l2[k] : 0.0;
      const double s11 = k + 1 < m ? s0[k + 1] : 0.0;
      const double s12 = k + 2 < m ? s1[k + 1] : 0.0;
      const double s22 = k + 2 < m ? s0[k + 2] : 0.0;
      s2[k] = -a * s12 - b * s22;
      s1[k] = -a * s11 - b * s12;
      s0[k] = 1.0 / d[k] - a * s1[k] - b * s2[k];
    }
  }
};

struct Problem {
  Grouped g;
  std::vector<double> h;
  // Q columns: q0[k] = Q(k,k), q1[k] = Q(k+1,k), q2[k] = Q(k+2,k).
  std::vector<double> q0, q1, q2;
  std::vector<double> r0, r1;  // R diagonal and off-diagonal
  std::vector<double> qty;     // Q^T y

  explicit Problem(Grouped grouped) : g(std::move(grouped)) {
    const size_t n = g.x.size();
    const size_t m = n - 2;
    h.resize(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) h[i] = g.x[i + 1] - g.x[i];
    q0.resize(m);
    q1.resize(m);
    q2.resize(m);
    r0.resize(m);
    r1.assign(m, 0.0);
    qty.resize(m);
    for (size_t k = 0; k < m; ++k) {
      q0[k] = 1.0 / h[k];
      q1[k] = -1.0 / h[k] - 1.0 / h[k + 1];
      q2[k] = 1.0 / h[k + 1];
      r0[k] = (h[k] + h[k + 1]) / 3.0;
      if (k + 1 < m) r1[k] = h[k + 1] / 6.0;
      qty[k] = q0[k] * g.y[k] + q1[k] * g.y[k + 1] + q2[k] * g.y[k + 2];
    }
  }

  size_t n() const { return g.x.size(); }
  size_t m() const { return n() - 2; }

  // Q(i,k) for |i - k| within the column's support, else 0.
  double q(size_t i, size_t k) const {
    if (i == k) return q0[k];
    if (i == k + 1) return q1[k];
    if (i == k + 2) return q2[k];
    return 0.0;
  }

  // B = R + lambda Q^T W^{-1} Q.
  Banded system(double lambda) const {
    const size_t m_ = m();
    Banded b;
    b.b0.resize(m_);
    b.b1.assign(m_, 0.0);
    b.b2.assign(m_, 0.0);
    for (size_t k = 0; k < m_; ++k) {
      b.b0[k] = r0[k] + lambda * (q0[k] * q0[k] / g.w[k] +
                                  q1[k] * q1[k] / g.w[k + 1] +
                                  q2[k] * q2[k] / g.w[k + 2]);
      if (k + 1 < m_)
        b.b1[k] = r1[k] + lambda * (q1[k] * q0[k + 1] / g.w[k + 1] +
                                    q2[k] * q1[k + 1] / g.w[k + 2]);
      if (k + 2 < m_) b.b2[k] = lambda * q2[k] * q0[k + 2] / g.w[k + 2];
    }
    b.factor();
    return b;
  }

  double trace_ratio() const {
    double tr_r = 0.0, tr_q = 0.0;
    for (size_t k = 0; k < m(); ++k) {
      tr_r += r0[k];
      tr_q += q0[k] * q0[k] / g.w[k] + q1[k] * q1[k] / g.w[k + 1] +
              q2[k] * q2[k] / g.w[k + 2];
    }
    return tr_r / tr_q;
  }

  struct Solution {
    std::vector<double> fitted, second;
    double gcv = 0.0, edf = 0.0;
  };

  Solution solve(double lambda) const {
    const size_t n_ = n(), m_ = m();
    Banded b = system(lambda);
    std::vector<double> gamma = b.solve(qty);
    Solution s;
    s.fitted.resize(n_);
    for (size_t i = 0; i < n_; ++i) {
      double qg = 0.0;
      for (size_t k = (i >= 2 ? i - 2 : 0); k <= i && k < m_; ++k)
        qg += q(i, k) * gamma[k];
      s.fitted[i] = g.y[i] - lambda * qg / g.w[i];
    }
    s.second.assign(n_, 0.0);
    for (size_t k = 0; k < m_; ++k) s.second[k + 1] = gamma[k];

    std::vector<double> s0, s1, s2;
    b.inverse_band(s0, s1, s2);
    auto sigma = [&](size_t a, size_t c) {
      if (a > c) std::swap(a, c);
      if (c == a) return s0[a];
      if (c == a + 1) return s1[a];
      if (c == a + 2) return s2[a];
      return 0.0;
    };
    double trace = 0.0, rss = 0.0, wsum = 0.0;
    for (size_t i = 0; i < n_; ++i) {
      const size_t lo = i >= 2 ? i - 2 : 0;
      const size_t hi = std::min(i, m_ - 1);
      double quad = 0.0;
      for (size_t k = lo; k <= hi; ++k)
        for (size_t l = lo; l <= hi; ++l)
          quad += q(i, k) * sigma(k, l) * q(i, l);
      trace += 1.0 - lambda * quad / g.w[i];
      const double r = g.y[i] - s.fitted[i];
      rss += g.w[i] * r * r;
      wsum += g.w[i];
    }
    s.edf = trace;
    const double denom = 1.0 - trace / static_cast<double>(n_);
    s.gcv = (rss / wsum) / (denom * denom);
    return s;
  }
};

}  // namespace

double SmoothingSpline::operator()(double t) const {
  if (linear_) return intercept_ + slope_ * t;
  const auto& x = knots_;
  const size_t n = x.size();
  if (t <= x.front()) {
    const double h = x[1] - x[0];
    const double slope = (fitted_[1] - fitted_[0]) / h - h * second_[1] / 6.0;
    return fitted_[0] + slope * (t - x[0]);
  }
  if (t >= x.back()) {
    const double h = x[n - 1] - x[n - 2];
    const double slope =
        (fitted_[n - 1] - fitted_[n - 2]) / h + h * second_[n - 2] / 6.0;
    return fitted_[n - 1] + slope * (t - x[n - 1]);
  }
  size_t i = static_cast<size_t>(
      std::upper_bound(x.begin(), x.end(), t) - x.begin() - 1);
  const double h = x[i + 1] - x[i];
  const double a = t - x[i], b = x[i + 1] - t;
  return (a * fitted_[i + 1] + b * fitted_[i]) / h -
         a * b / 6.0 *
             ((1.0 + a / h) * second_[i + 1] + (1.0 + b / h) * second_[i]);
}

std::vector<double> SmoothingSpline::evaluate(std::span<const double> t) const {
  std::vector<double> out;
  out.reserve(t.size());
  for (double v : t) out.push_back((*this)(v));
  return out;
}

SmoothingSpline fit_smoothing_spline(std::span<const double> x,
                                     std::span<const double> y,
                                     std::optional<double> lambda) {
  Grouped g = group(x, y);
  if (g.x.size() < 4)
    throw SplineError("trait_analysis",
                      "cubic smoothing spline needs at least 4 distinct x "
                      "values, got " + std::to_string(g.x.size()) +
                          "; use a linear fit instead");
  Problem problem(std::move(g));
  double best_lambda = 0.0;
  Problem::Solution best;
  if (lambda) {
    if (!(*lambda >= 0.0))
      throw SplineError("trait_analysis", "lambda must be non-negative");
    best_lambda = *lambda;
    best = problem.solve(best_lambda);
  } else {
    // Search log10(lambda / scale) on [-4, 6]: coarse grid, then golden
    // section around the best grid point.
    const double scale = problem.trace_ratio();
    auto score = [&](double u) {
      return problem.solve(scale * std::pow(10.0, u)).gcv;
    };
    constexpr double lo = -4.0, hi = 6.0;
    constexpr int steps = 40;
    int best_k = 0;
    double best_score = INFINITY;
    for (int k = 0; k <= steps; ++k) {
      double s = score(lo + (hi - lo) * k / steps);
      if (s < best_score) {
        best_score = s;
        best_k = k;
      }
    }
    double a = lo + (hi - lo) * std::max(best_k - 1, 0) / steps;
    double b = lo + (hi - lo) * std::min(best_k + 1, steps) / steps;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = score(c), fd = score(d);
    for (int it = 0; it < 40; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - phi * (b - a);
        fc = score(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + phi * (b - a);
        fd = score(d);
      }
    }
    double u = 0.5 * (a + b);
    if (best_score < score(u)) u = lo + (hi - lo) * best_k / steps;
    best_lambda = scale * std::pow(10.0, u);
    best = problem.solve(best_lambda);
  }
  SmoothingSpline s;
  s.knots_ = problem.g.x;
  s.fitted_ = std::move(best.fitted);
  s.second_ = std::move(best.second);
  s.lambda_ = best_lambda;
  s.gcv_ = best.gcv;
  s.edf_ = best.edf;
  return s;
}

SmoothingSpline fit_line(std::span<const double> x, std::span<const double> y) {
  Grouped g = group(x, y);
  if (g.x.empty()) throw SplineError("trait_analysis", "no data to fit");
  double sw = 0, sx = 0, sy = 0;
  for (size_t i = 0; i < g.x.size(); ++i) {
    sw += g.w[i];
    sx += g.w[i] * g.x[i];
    sy += g.w[i] * g.y[i];
  }
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < g.x.size(); ++i) {
    sxx += g.w[i] * (g.x[i] - mx) * (g.x[i] - mx);
    sxy += g.w[i] * (g.x[i] - mx) * (g.y[i] - my);
  }
  SmoothingSpline s;
  s.linear_ = true;
  s.slope_ = sxx > 0 ? sxy / sxx : 0.0;
  s.intercept_ = my - s.slope_ * mx;
  s.knots_ = g.x;
  for (double v : g.x) s.fitted_.push_back(s.intercept_ + s.slope_ * v);
  s.second_.assign(g.x.size(), 0.0);
  s.lambda_ = INFINITY;
  s.edf_ = sxx > 0 ? 2.0 : 1.0;
  return s;
}

}  // namespace airt::spline
