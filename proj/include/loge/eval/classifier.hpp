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

#ifndef LOGE_EVAL_CLASSIFIER_HPP
#define LOGE_EVAL_CLASSIFIER_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "loge/core.hpp"
#include "loge/model.hpp"

namespace loge {

/// Dense row-major feature matrix.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  FeatureMatrix() = default;
  FeatureMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
};

struct LinearClassifier {
  std::vector<double> weights;
  double bias = 0.0;

  double decision(std::span<const double> x) const { return dot(weights, x) + bias; }
  double probability(std::span<const double> x) const { return sigmoid(decision(x)); }
};

struct FitOptions {
  double reg = 1e-4;       // L2 penalty on the weights (bias unpenalized)
  int max_iter = 500;
  double grad_tol = 1e-6;  // stop when the gradient norm falls below this
};

struct FitResult {
  LinearClassifier classifier;
  int iterations = 0;
  double gradient_norm = 0.0;
  double objective = 0.0;
};

/// Regularized logistic regression,
///   J(w, b) = mean_i log(1 + exp(-s_i (w.x_i + b))) + reg/2 |w|^2,  s_i = +-1,
/// minimized by full-batch gradient descent with Armijo backtracking.
/// Iterates in standardized coordinates (a diagonal change of variables with
/// the same minimizer) with a diagonal preconditioner; the trial step is the
/// Barzilai-Borwein length.
inline FitResult fit_logistic(const FeatureMatrix& x, std::span<const int> labels,
                              const FitOptions& opt = {}) {
  ensure(labels.size() == x.rows, "fit_logistic: label count mismatch");
  ensure(x.rows > 0, "fit_logistic: empty training set");
  const bool has_pos = std::find(labels.begin(), labels.end(), 1) != labels.end();
  const bool has_neg = std::find(labels.begin(), labels.end(), 0) != labels.end();
  ensure(has_pos && has_neg, "fit_logistic: training set needs both classes");
  ensure(opt.reg >= 0.0, "fit_logistic: reg must be non-negative");

  const std::size_t n = x.rows;
  const std::size_t p = x.cols;
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<double> mean(p, 0.0), scale(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = x.row(i);
    for (std::size_t j = 0; j < p; ++j) mean[j] += r[j];
  }
  for (double& m : mean) m *= inv_n;
  for (std::size_t i = 0; i < n; ++i) {
    auto r = x.row(i);
    for (std::size_t j = 0; j < p; ++j) scale[j] += (r[j] - mean[j]) * (r[j] - mean[j]);
  }
  for (double& s : scale) {
    s = std::sqrt(s * inv_n);
    if (!(s > 0.0)) s = 1.0;
  }

  // theta = (v_0..v_{p-1}, c) with w_j = v_j / scale_j, b = c - sum_j w_j mean_j.
  std::vector<double> z(n);
  auto objective = [&](const std::vector<double>& theta, std::vector<double>* grad) {
    for (std::size_t i = 0; i < n; ++i) {
      auto r = x.row(i);
      double acc = theta[p];
      for (std::size_t j = 0; j < p; ++j) acc += theta[j] * (r[j] - mean[j]) / scale[j];
      z[i] = acc;
    }
    double loss = 0.0;
    if (grad) grad->assign(p + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = labels[i] == 1 ? 1.0 : -1.0;
      loss -= log_sigmoid(s * z[i]);
      if (grad) {
        const double c = -s * sigmoid(-s * z[i]) * inv_n;
        auto r = x.row(i);
        for (std::size_t j = 0; j < p; ++j) (*grad)[j] += c * (r[j] - mean[j]) / scale[j];
        (*grad)[p] += c;
      }
    }
    loss *= inv_n;
    for (std::size_t j = 0; j < p; ++j) {
      const double wj = theta[j] / scale[j];
      loss += 0.5 * opt.reg * wj * wj;
      if (grad) (*grad)[j] += opt.reg * wj / scale[j];
    }
    return loss;
  };
  auto norm = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double a : v) s += a * a;
    return std::sqrt(s);
  };

  // Diagonal preconditioner: data curvature is at most 1/4 per
  // standardized column; the penalty adds reg / scale_j^2.
  std::vector<double> curv(p + 1, 0.25);
  for (std::size_t j = 0; j < p; ++j) curv[j] += opt.reg / (scale[j] * scale[j]);

  std::vector<double> theta(p + 1, 0.0), grad, trial(p + 1), trial_grad;
  double f = objective(theta, &grad);
  double step = 1.0;
  FitResult out;
  int it = 0;
  for (; it < opt.max_iter; ++it) {
    if (norm(grad) < opt.grad_tol) break;
    double decrease = 0.0;  // grad . D^-1 grad
    for (std::size_t j = 0; j <= p; ++j) decrease += grad[j] * grad[j] / curv[j];
    double f_new = 0.0;
    for (int shrink = 0; shrink < 60; ++shrink) {
      for (std::size_t j = 0; j <= p; ++j) trial[j] = theta[j] - step * grad[j] / curv[j];
      f_new = objective(trial, nullptr);
      if (f_new <= f - 0.5 * step * decrease) break;
      step *= 0.5;
    }
    if (!(f_new <= f)) break;  // no descent possible at machine precision
    objective(trial, &trial_grad);
    // Barzilai-Borwein length (in the preconditioned metric) for the next trial step.
    double sy = 0.0, sds = 0.0;
    for (std::size_t j = 0; j <= p; ++j) {
      const double s = trial[j] - theta[j];
      sy += s * (trial_grad[j] - grad[j]);
      sds += s * s * curv[j];
    }
    step = sy > 0.0 ? std::clamp(sds / sy, 1e-10, 1e10) : step * 2.0;
    theta.swap(trial);
    grad.swap(trial_grad);
    f = f_new;
  }

  out.iterations = it;
  out.gradient_norm = norm(grad);
  out.objective = f;
  out.classifier.weights.resize(p);
  double b = theta[p];
  for (std::size_t j = 0; j < p; ++j) {
    out.classifier.weights[j] = theta[j] / scale[j];
    b -= out.classifier.weights[j] * mean[j];
  }
  out.classifier.bias = b;
  return out;
}

/// Same objective as fit_logistic, evaluated in the original coordinates.
inline double logistic_objective(const LinearClassifier& c, const FeatureMatrix& x,
                                 std::span<const int> labels, double reg) {
  double loss = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    const double s = labels[i] == 1 ? 1.0 : -1.0;
    loss -= log_sigmoid(s * c.decision(x.row(i)));
  }
  loss /= static_cast<double>(x.rows);
  for (double w : c.weights) loss += 0.5 * reg * w * w;
  return loss;
}

}  // namespace loge

#endif  // LOGE_EVAL_CLASSIFIER_HPP
