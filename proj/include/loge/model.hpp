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

#ifndef LOGE_MODEL_HPP
#define LOGE_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "loge/core.hpp"
#include "loge/graph.hpp"
#include "loge/random.hpp"

namespace loge {

/// Which status mapping a model uses. GINE maps f(u) = w.u; LOG maps
/// f(u, u') = w.u + w'.u' and exports the concatenation u || u'.
enum class Mapping { gine, log };

inline const char* to_string(Mapping m) { return m == Mapping::gine ? "gine" : "log"; }

inline Mapping parse_mapping(const std::string& s) {
  if (s == "gine") return Mapping::gine;
  if (s == "log") return Mapping::log;
  throw ArgumentError("unknown algorithm '" + s + "' (expected gine or log)");
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

/// Source and target representation matrices (row-major, N x d) plus the
/// linear status parameters w and w'.
class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  EmbeddingModel(std::size_t node_count, std::size_t dim)
      : n_(node_count),
        d_(dim),
        source_(node_count * dim, 0.0),
        target_(node_count * dim, 0.0),
        w_(dim, 0.0),
        w_prime_(dim, 0.0) {}

  /// Uniform (-0.5/d, 0.5/d) initialization. GINE models leave U' and w'
  /// at zero since that mapping never touches them.
  static EmbeddingModel initialized(std::size_t node_count, std::size_t dim, Mapping mapping,
                                    Rng& rng) {
    EmbeddingModel m(node_count, dim);
    const double r = 0.5 / static_cast<double>(dim);
    auto fill = [&](std::vector<double>& v) {
      for (double& x : v) x = rng.uniform(-r, r);
    };
    fill(m.source_);
    if (mapping == Mapping::log) fill(m.target_);
    fill(m.w_);
    if (mapping == Mapping::log) fill(m.w_prime_);
    return m;
  }

  std::size_t node_count() const noexcept { return n_; }
  std::size_t dim() const noexcept { return d_; }

  std::span<double> source(NodeIndex v) { return {source_.data() + std::size_t{v} * d_, d_}; }
  std::span<const double> source(NodeIndex v) const {
    return {source_.data() + std::size_t{v} * d_, d_};
  }
  std::span<double> target(NodeIndex v) { return {target_.data() + std::size_t{v} * d_, d_}; }
  std::span<const double> target(NodeIndex v) const {
    return {target_.data() + std::size_t{v} * d_, d_};
  }

  std::span<double> w() { return w_; }
  std::span<const double> w() const { return w_; }
  std::span<double> w_prime() { return w_prime_; }
  std::span<const double> w_prime() const { return w_prime_; }

  std::span<const double> source_data() const { return source_; }
  std::span<const double> target_data() const { return target_; }

  bool all_finite() const {
    auto finite = [](const std::vector<double>& v) {
      return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };
    return finite(source_) && finite(target_) && finite(w_) && finite(w_prime_);
  }

  friend bool operator==(const EmbeddingModel&, const EmbeddingModel&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> source_;
  std::vector<double> target_;
  std::vector<double> w_;
  std::vector<double> w_prime_;
};

// ---------------------------------------------------------------------------
// Scalar kernels

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

/// log(sigmoid(x)) without exponentiating a large positive argument.
inline double log_sigmoid(double x) {
  if (x >= 0.0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

inline double status_value_gine(const EmbeddingModel& m, NodeIndex v) {
  return dot(m.w(), m.source(v));
}

inline double status_value_log(const EmbeddingModel& m, NodeIndex v) {
  return dot(m.w(), m.source(v)) + dot(m.w_prime(), m.target(v));
}

inline double status_value(const EmbeddingModel& m, NodeIndex v, Mapping mapping) {
  return mapping == Mapping::gine ? status_value_gine(m, v) : status_value_log(m, v);
}

/// Probability that the node with status f_i is ranked before the one with f_j.
inline double pair_order_prob(double f_i, double f_j) { return sigmoid(f_i - f_j); }

// ---------------------------------------------------------------------------
// Global list loss

/// Gradient of the list loss. Row k of d_source/d_target belongs to nodes[k].
/// d_target and d_w_prime stay empty under the GINE mapping.
struct ListGradient {
  std::vector<NodeIndex> nodes;
  std::vector<double> d_source;
  std::vector<double> d_target;
  std::vector<double> d_w;
  std::vector<double> d_w_prime;
  std::vector<double> d_status;  // dLoss/df per list member
};

/// Negative log-likelihood that every ordered pair of the list keeps its
/// level order: -sum_{i<j} log sigmoid(f[i] - f[j]). Fills `grad` when given.
inline double global_list_loss(const EmbeddingModel& m, std::span<const NodeIndex> list,
                               Mapping mapping, ListGradient* grad = nullptr) {
  const std::size_t k = list.size();
  if (k < 2) throw ArgumentError("global_list_loss: list needs at least two nodes");
  const std::size_t d = m.dim();

  std::vector<double> local_status;
  std::vector<double>& gf = grad ? grad->d_status : local_status;
  gf.assign(k, 0.0);
  std::vector<double> f(k);
  for (std::size_t i = 0; i < k; ++i) f[i] = status_value(m, list[i], mapping);

  double loss = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double delta = f[i] - f[j];
      loss -= log_sigmoid(delta);
      const double c = sigmoid(-delta);  // 1 - sigmoid(delta)
      gf[i] -= c;
      gf[j] += c;
    }
  }
  if (!grad) return loss;

  grad->nodes.assign(list.begin(), list.end());
  grad->d_source.assign(k * d, 0.0);
  grad->d_w.assign(d, 0.0);
  const bool log_map = mapping == Mapping::log;
  grad->d_target.assign(log_map ? k * d : 0, 0.0);
  grad->d_w_prime.assign(log_map ? d : 0, 0.0);

  auto w = m.w();
  auto wp = m.w_prime();
  for (std::size_t i = 0; i < k; ++i) {
    auto u = m.source(list[i]);
    double* ds = grad->d_source.data() + i * d;
    for (std::size_t c = 0; c < d; ++c) {
      ds[c] = gf[i] * w[c];
      grad->d_w[c] += gf[i] * u[c];
    }
    if (log_map) {
      auto up = m.target(list[i]);
      double* dt = grad->d_target.data() + i * d;
      for (std::size_t c = 0; c < d; ++c) {
        dt[c] = gf[i] * wp[c];
        grad->d_w_prime[c] += gf[i] * up[c];
      }
    }
  }
  return loss;
}

inline void apply_list_gradient(EmbeddingModel& m, const ListGradient& g, double eta) {
  const std::size_t d = m.dim();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    auto u = m.source(g.nodes[i]);
    const double* ds = g.d_source.data() + i * d;
    for (std::size_t c = 0; c < d; ++c) u[c] -= eta * ds[c];
    if (!g.d_target.empty()) {
      auto up = m.target(g.nodes[i]);
      const double* dt = g.d_target.data() + i * d;
      for (std::size_t c = 0; c < d; ++c) up[c] -= eta * dt[c];
    }
  }
  auto w = m.w();
  for (std::size_t c = 0; c < d; ++c) w[c] -= eta * g.d_w[c];
  if (!g.d_w_prime.empty()) {
    auto wp = m.w_prime();
    for (std::size_t c = 0; c < d; ++c) wp[c] -= eta * g.d_w_prime[c];
  }
}

// ---------------------------------------------------------------------------
// Negative-sampling local term

/// Sparse gradient of the local term: one source row and 1 + N_e target
/// rows (context first, then negatives in draw order; rows may repeat).
struct LocalGradient {
  NodeIndex source = 0;
  std::vector<double> d_source;
  std::vector<NodeIndex> targets;
  std::vector<double> d_targets;
};

/// -log sigmoid(u.u'_ctx) - sum_n log sigmoid(-u.u'_n) for center v.
inline double local_term(const EmbeddingModel& m, NodeIndex v, NodeIndex ctx,
                         std::span<const NodeIndex> negatives, LocalGradient* grad = nullptr) {
  const std::size_t d = m.dim();
  auto u = m.source(v);
  const double x_ctx = dot(u, m.target(ctx));
  double loss = -log_sigmoid(x_ctx);
  if (grad) {
    grad->source = v;
    grad->d_source.assign(d, 0.0);
    grad->targets.resize(negatives.size() + 1);
    grad->d_targets.resize((negatives.size() + 1) * d);
    grad->targets[0] = ctx;
    const double c = -sigmoid(-x_ctx);
    auto t = m.target(ctx);
    for (std::size_t k = 0; k < d; ++k) {
      grad->d_source[k] += c * t[k];
      grad->d_targets[k] = c * u[k];
    }
  }
  for (std::size_t n = 0; n < negatives.size(); ++n) {
    auto t = m.target(negatives[n]);
    const double x = dot(u, t);
    loss -= log_sigmoid(-x);
    if (grad) {
      const double c = sigmoid(x);
      grad->targets[n + 1] = negatives[n];
      double* dt = grad->d_targets.data() + (n + 1) * d;
      for (std::size_t k = 0; k < d; ++k) {
        grad->d_source[k] += c * t[k];
        dt[k] = c * u[k];
      }
    }
  }
  return loss;
}

inline void apply_local_gradient(EmbeddingModel& m, const LocalGradient& g, double eta) {
  const std::size_t d = m.dim();
  for (std::size_t n = 0; n < g.targets.size(); ++n) {
    auto t = m.target(g.targets[n]);
    const double* dt = g.d_targets.data() + n * d;
    for (std::size_t k = 0; k < d; ++k) t[k] -= eta * dt[k];
  }
  auto u = m.source(g.source);
  for (std::size_t k = 0; k < d; ++k) u[k] -= eta * g.d_source[k];
}

/// Exact full-softmax neighborhood objective,
///   -sum_v sum_{j in N(v)} log( exp(u_v.u'_j) / sum_i exp(u_v.u'_i) ).
/// O(N^2 d); meant for checking training on small graphs only.
inline double softmax_local_objective(const EmbeddingModel& m, const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> scores(n);
  double total = 0.0;
  for (NodeIndex v = 0; v < n; ++v) {
    if (g.degree(v) == 0) continue;
    auto u = m.source(v);
    double mx = -INFINITY;
    for (NodeIndex i = 0; i < n; ++i) {
      scores[i] = dot(u, m.target(i));
      mx = std::max(mx, scores[i]);
    }
    double z = 0.0;
    for (double s : scores) z += std::exp(s - mx);
    const double log_z = mx + std::log(z);
    for (NodeIndex j : g.neighbors(v)) total -= scores[j] - log_z;
  }
  return total;
}

/// u_v under GINE, u_v || u'_v under LOG.
inline std::vector<double> final_representation(const EmbeddingModel& m, NodeIndex v,
                                                Mapping mode) {
  std::vector<double> out(m.source(v).begin(), m.source(v).end());
  if (mode == Mapping::log) out.insert(out.end(), m.target(v).begin(), m.target(v).end());
  return out;
}

// ---------------------------------------------------------------------------
// Embedding text format: header "N D", then "label x_1 ... x_D" per node.

/// Final representations keyed by label, as read back from disk.
struct EmbeddingTable {
  std::vector<std::string> labels;
  std::size_t dim = 0;
  std::vector<double> values;  // row-major, labels.size() x dim

  std::span<const double> row(std::size_t i) const { return {values.data() + i * dim, dim}; }
};

inline EmbeddingTable embedding_table(const EmbeddingModel& m, std::span<const std::string> labels,
                                      Mapping mode) {
  ensure(labels.size() == m.node_count(), "embedding_table: label count mismatch");
  EmbeddingTable t;
  t.labels.assign(labels.begin(), labels.end());
  t.dim = mode == Mapping::log ? 2 * m.dim() : m.dim();
  t.values.reserve(t.labels.size() * t.dim);
  for (NodeIndex v = 0; v < m.node_count(); ++v) {
    auto rep = final_representation(m, v, mode);
    t.values.insert(t.values.end(), rep.begin(), rep.end());
  }
  return t;
}

inline void write_embeddings(const EmbeddingTable& t, std::ostream& out) {
  out << t.labels.size() << ' ' << t.dim << '\n';
  for (std::size_t i = 0; i < t.labels.size(); ++i) {
    out << t.labels[i];
    for (double x : t.row(i)) out << ' ' << format_double(x);
    out << '\n';
  }
}

inline void write_embeddings(const EmbeddingModel& m, std::span<const std::string> labels,
                             Mapping mode, std::ostream& out) {
  write_embeddings(embedding_table(m, labels, mode), out);
}

namespace detail {

inline std::vector<double> parse_row(std::istringstream& tokens, std::size_t expected,
                                     std::size_t line_no) {
  std::vector<double> row;
  row.reserve(expected);
  std::string tok;
  while (tokens >> tok) {
    double x;
    if (!parse_double(tok, x)) throw ParseError(line_no, "bad number '" + tok + "'");
    row.push_back(x);
  }
  if (row.size() != expected) {
    throw ParseError(line_no, "expected " + std::to_string(expected) + " values, got " +
                                  std::to_string(row.size()));
  }
  return row;
}

}  // namespace detail

inline EmbeddingTable read_embeddings(std::istream& in) {
  EmbeddingTable t;
  std::string line;
  std::size_t line_no = 1;
  std::size_t n = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> t.dim) || (header >> extra)) throw ParseError(1, "header must be 'N D'");
  }
  t.labels.reserve(n);
  t.values.reserve(n * t.dim);
  while (t.labels.size() < n && std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream tokens(line);
    std::string label;
    tokens >> label;
    auto row = detail::parse_row(tokens, t.dim, line_no);
    t.labels.push_back(std::move(label));
    t.values.insert(t.values.end(), row.begin(), row.end());
  }
  if (t.labels.size() != n) {
    throw ParseError(line_no, "expected " + std::to_string(n) + " rows, got " +
                                  std::to_string(t.labels.size()));
  }
  return t;
}

/// Status parameters sidecar: two lines, "w x_1 ... x_d" and "w' x_1 ... x_d".
struct StatusParams {
  std::vector<double> w;
  std::vector<double> w_prime;
};

inline void write_params(const EmbeddingModel& m, std::ostream& out) {
  out << "w";
  for (double x : m.w()) out << ' ' << format_double(x);
  out << "\nw'";
  for (double x : m.w_prime()) out << ' ' << format_double(x);
  out << '\n';
}

inline StatusParams read_params(std::istream& in) {
  StatusParams p;
  std::string line;
  std::size_t line_no = 0;
  auto read_line = [&](const char* tag, std::vector<double>& dst) {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) break;
    }
    std::istringstream tokens(line);
    std::string label;
    if (!(tokens >> label) || label != tag) {
      throw ParseError(line_no, std::string("expected parameter line '") + tag + "'");
    }
    std::string tok;
    while (tokens >> tok) {
      double x;
      if (!parse_double(tok, x)) throw ParseError(line_no, "bad number '" + tok + "'");
      dst.push_back(x);
    }
  };
  read_line("w", p.w);
  read_line("w'", p.w_prime);
  if (p.w.size() != p.w_prime.size()) throw ParseError(line_no, "w and w' lengths differ");
  return p;
}

}  // namespace loge

#endif  // LOGE_MODEL_HPP
