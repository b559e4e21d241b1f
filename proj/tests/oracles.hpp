// Copyright 2026 The loge Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference implementations used only by tests. None of these call into the
// code paths they are used to check.

#ifndef LOGE_TESTS_ORACLES_HPP
#define LOGE_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <vector>

#include "loge/loge.hpp"

namespace loge::oracle {

/// Dense power iteration on the explicit N x N Google matrix.
inline std::vector<double> dense_pagerank(const Graph& g, double damping, double tol = 1e-15,
                                          int max_iter = 100000) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool edge = std::find(g.neighbors(static_cast<NodeIndex>(j)).begin(),
                                  g.neighbors(static_cast<NodeIndex>(j)).end(),
                                  static_cast<NodeIndex>(i)) != g.neighbors(static_cast<NodeIndex>(j)).end();
      const double walk = edge ? 1.0 / static_cast<double>(g.neighbors(static_cast<NodeIndex>(j)).size()) : 0.0;
      m[i][j] = damping * walk + (1.0 - damping) / static_cast<double>(n);
    }
  }
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), y(n);
  for (int it = 0; it < max_iter; ++it) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += m[i][j] * x[j];
      y[i] = s;
      change += std::fabs(y[i] - x[i]);
    }
    x.swap(y);
    if (change < tol) break;
  }
  double total = 0.0;
  for (double v : x) total += v;
  for (double& v : x) v /= total;
  return x;
}

/// Central finite difference of f at x[i].
inline double central_difference(const std::function<double()>& f, double& x, double h) {
  const double saved = x;
  x = saved + h;
  const double up = f();
  x = saved - h;
  const double down = f();
  x = saved;
  return (up - down) / (2.0 * h);
}

/// |a - b| / max(|a|, |b|, floor); the floor keeps near-zero partials from
/// dominating with pure rounding noise.
inline double relative_error(double a, double b, double floor = 1e-6) {
  return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), floor});
}

/// O(n^2) AUC over every (positive, negative) pair.
inline double pairwise_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  double wins = 0.0, pairs = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

/// Common neighbors, Jaccard, preferential attachment from std::set algebra.
inline std::vector<double> set_hfb(const Graph& g, NodeIndex a, NodeIndex b) {
  std::set<NodeIndex> na(g.neighbors(a).begin(), g.neighbors(a).end());
  std::set<NodeIndex> nb(g.neighbors(b).begin(), g.neighbors(b).end());
  std::vector<NodeIndex> inter, uni;
  std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(inter));
  std::set_union(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(uni));
  const double j = uni.empty() ? 0.0 : static_cast<double>(inter.size()) / static_cast<double>(uni.size());
  return {static_cast<double>(inter.size()), j, static_cast<double>(na.size() * nb.size())};
}

/// Spearman straight from the definition: ranks by counting, Pearson by sums.
inline double definitional_spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto rank = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double less = 0.0, equal = 0.0;
      for (double w : v) {
        if (w < v[i]) less += 1.0;
        else if (w == v[i]) equal += 1.0;
      }
      r[i] = less + (equal + 1.0) / 2.0;
    }
    return r;
  };
  auto rx = rank(x), ry = rank(y);
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i] / n;
    my += ry[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

/// Newton's method on the same regularized logistic objective, in the
/// original coordinates with a dense Hessian solve.
inline std::vector<double> newton_logistic(const FeatureMatrix& x, const std::vector<int>& y, double reg,
                                           int iters = 100) {
  const std::size_t p = x.cols + 1;  // weights then bias
  std::vector<double> theta(p, 0.0);
  const double inv_n = 1.0 / static_cast<double>(x.rows);
  for (int it = 0; it < iters; ++it) {
    std::vector<double> g(p, 0.0);
    std::vector<std::vector<double>> h(p, std::vector<double>(p, 0.0));
    for (std::size_t i = 0; i < x.rows; ++i) {
      std::vector<double> xi(x.row(i).begin(), x.row(i).end());
      xi.push_back(1.0);
      double z = 0.0;
      for (std::size_t j = 0; j < p; ++j) z += theta[j] * xi[j];
      const double prob = 1.0 / (1.0 + std::exp(-z));
      const double r = prob - (y[i] == 1 ? 1.0 : 0.0);
      for (std::size_t j = 0; j < p; ++j) {
        g[j] += r * xi[j] * inv_n;
        for (std::size_t k = 0; k < p; ++k) h[j][k] += prob * (1 - prob) * xi[j] * xi[k] * inv_n;
      }
    }
    for (std::size_t j = 0; j + 1 < p; ++j) {
      g[j] += reg * theta[j];
      h[j][j] += reg;
    }
    // Solve h * step = g by Gaussian elimination with partial pivoting.
    std::vector<double> step = g;
    for (std::size_t c = 0; c < p; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < p; ++r) {
        if (std::fabs(h[r][c]) > std::fabs(h[piv][c])) piv = r;
      }
      std::swap(h[c], h[piv]);
      std::swap(step[c], step[piv]);
      for (std::size_t r = c + 1; r < p; ++r) {
        const double f = h[r][c] / h[c][c];
        for (std::size_t k = c; k < p; ++k) h[r][k] -= f * h[c][k];
        step[r] -= f * step[c];
      }
    }
    for (std::size_t c = p; c-- > 0;) {
      for (std::size_t k = c + 1; k < p; ++k) step[c] -= h[c][k] * step[k];
      step[c] /= h[c][c];
    }
    double norm = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      theta[j] -= step[j];
      norm += step[j] * step[j];
    }
    if (std::sqrt(norm) < 1e-14) break;
  }
  return theta;
}

/// Largest number of edges removable while every node keeps degree >= 1,
/// by exhaustive search over edge subsets (small graphs only).
inline std::size_t max_removable_bruteforce(const Graph& g) {
  auto edges = g.edges();
  const std::size_t m = edges.size();
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<int> deg(g.node_count(), 0);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) continue;
      ++deg[edges[i].a];
      ++deg[edges[i].b];
      ++kept;
    }
    if (std::all_of(deg.begin(), deg.end(), [](int d) { return d >= 1; })) best = std::max(best, m - kept);
  }
  return best;
}

}  // namespace loge::oracle

#endif  // LOGE_TESTS_ORACLES_HPP
