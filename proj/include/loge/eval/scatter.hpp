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

#ifndef LOGE_EVAL_SCATTER_HPP
#define LOGE_EVAL_SCATTER_HPP

#include <cmath>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "loge/core.hpp"
#include "loge/eval/classifier.hpp"
#include "loge/model.hpp"

namespace loge {

/// Least-squares coefficients for y ~ x (Householder QR). Columns whose
/// pivot vanishes get a zero coefficient.
inline std::vector<double> least_squares(FeatureMatrix a, std::vector<double> y) {
  ensure(a.rows == y.size(), "least_squares: row count mismatch");
  const std::size_t m = a.rows;
  const std::size_t n = a.cols;
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a.data[i * n + j]; };

  double max_norm = 0.0;
  std::vector<double> diag(n, 0.0);
  for (std::size_t k = 0; k < n && k < m; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < m; ++i) norm += at(i, k) * at(i, k);
    norm = std::sqrt(norm);
    max_norm = std::max(max_norm, norm);
    if (norm == 0.0) continue;
    const double alpha = at(k, k) > 0 ? -norm : norm;
    at(k, k) -= alpha;  // v = x - alpha e1, stored in column k
    double vtv = 0.0;
    for (std::size_t i = k; i < m; ++i) vtv += at(i, k) * at(i, k);
    diag[k] = alpha;
    if (vtv == 0.0) continue;
    for (std::size_t j = k + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += at(i, k) * at(i, j);
      s = 2.0 * s / vtv;
      for (std::size_t i = k; i < m; ++i) at(i, j) -= s * at(i, k);
    }
    double s = 0.0;
    for (std::size_t i = k; i < m; ++i) s += at(i, k) * y[i];
    s = 2.0 * s / vtv;
    for (std::size_t i = k; i < m; ++i) y[i] -= s * at(i, k);
  }

  std::vector<double> coef(n, 0.0);
  const double eps = 1e-12 * std::max(max_norm, 1.0);
  for (std::size_t kk = std::min(n, m); kk-- > 0;) {
    if (std::abs(diag[kk]) <= eps) continue;
    double s = y[kk];
    for (std::size_t j = kk + 1; j < n; ++j) s -= at(kk, j) * coef[j];
    coef[kk] = s / diag[kk];
  }
  return coef;
}

struct ScatterRow {
  std::size_t position;  // 1-based position in descending PageRank order
  double predicted_status;
};

/// Predicted status of every node, listed in PageRank order.
///
/// With `coefficients` (w, or w || w' for concatenated representations) the
/// prediction is their dot product with the representation. Without, an
/// intercept-plus-linear least-squares fit from representations to
/// `scores` supplies the prediction.
inline std::vector<ScatterRow> status_scatter(const EmbeddingTable& reps,
                                              std::optional<std::span<const double>> coefficients,
                                              std::span<const double> scores,
                                              std::span<const NodeIndex> ranking) {
  const std::size_t n = reps.labels.size();
  ensure(ranking.size() == n, "status_scatter: ranking does not cover the node set");
  std::vector<double> predicted(n);
  if (coefficients) {
    ensure(coefficients->size() == reps.dim, "status_scatter: parameter length " +
                                                 std::to_string(coefficients->size()) +
                                                 " does not match representation length " +
                                                 std::to_string(reps.dim));
    for (std::size_t v = 0; v < n; ++v) predicted[v] = dot(*coefficients, reps.row(v));
  } else {
    ensure(scores.size() == n, "status_scatter: scores do not cover the node set");
    FeatureMatrix design(n, reps.dim + 1);
    for (std::size_t v = 0; v < n; ++v) {
      auto r = design.row(v);
      r[0] = 1.0;
      std::copy(reps.row(v).begin(), reps.row(v).end(), r.begin() + 1);
    }
    auto coef = least_squares(design, std::vector<double>(scores.begin(), scores.end()));
    for (std::size_t v = 0; v < n; ++v) predicted[v] = dot(coef, design.row(v));
  }
  std::vector<ScatterRow> rows;
  rows.reserve(n);
  for (std::size_t pos = 0; pos < n; ++pos) rows.push_back({pos + 1, predicted[ranking[pos]]});
  return rows;
}

inline void write_scatter_csv(std::span<const ScatterRow> rows, std::ostream& out) {
  out << "position,predicted_status\n";
  for (const auto& r : rows) out << r.position << ',' << format_double(r.predicted_status) << '\n';
}

}  // namespace loge

#endif  // LOGE_EVAL_SCATTER_HPP
