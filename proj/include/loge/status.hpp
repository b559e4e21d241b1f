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

#ifndef LOGE_STATUS_HPP
#define LOGE_STATUS_HPP

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "loge/core.hpp"
#include "loge/graph.hpp"
#include "loge/random.hpp"

namespace loge {

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-10;
  int max_iter = 1000;
};

/// Node status scores. Scores are strictly positive and sum to one.
struct StatusScores {
  std::vector<double> scores;
  int iterations_used = 0;
  double residual = 0.0;  // L1 change of the last iteration
  bool converged = false;
};

/// Power iteration of the undirected random walk with uniform teleport:
///   x'(v) = (1 - damping) / N + damping * sum_{u ~ v} x(u) / deg(u)
/// Stops once the L1 change drops below the tolerance. Non-convergence is
/// reported through `converged`, not thrown.
inline StatusScores pagerank(const Graph& g, const PageRankOptions& opt = {}) {
  ensure(!g.empty(), "pagerank: graph is empty");
  ensure(opt.damping > 0.0 && opt.damping < 1.0, "pagerank: damping must lie in (0, 1)");
  ensure(opt.tolerance > 0.0, "pagerank: tolerance must be positive");
  ensure(opt.max_iter >= 1, "pagerank: max_iter must be >= 1");

  const std::size_t n = g.node_count();
  const double teleport = (1.0 - opt.damping) / static_cast<double>(n);
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> share(n);
  std::vector<double> next(n);

  StatusScores out;
  for (int it = 1; it <= opt.max_iter; ++it) {
    for (NodeIndex v = 0; v < n; ++v) share[v] = x[v] / static_cast<double>(g.degree(v));
    double change = 0.0;
    for (NodeIndex v = 0; v < n; ++v) {
      double acc = 0.0;
      for (NodeIndex u : g.neighbors(v)) acc += share[u];
      next[v] = teleport + opt.damping * acc;
      change += std::abs(next[v] - x[v]);
    }
    x.swap(next);
    out.iterations_used = it;
    out.residual = change;
    if (change < opt.tolerance) {
      out.converged = true;
      break;
    }
  }
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  for (double& s : x) s /= total;
  out.scores = std::move(x);
  return out;
}

inline StatusScores pagerank(const Graph& g, double damping, double tolerance, int max_iter) {
  return pagerank(g, PageRankOptions{damping, tolerance, max_iter});
}

/// Node indices by descending score; equal scores keep ascending index order.
inline std::vector<NodeIndex> rank_nodes(std::span<const double> scores) {
  std::vector<NodeIndex> order(scores.size());
  std::iota(order.begin(), order.end(), NodeIndex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeIndex a, NodeIndex b) { return scores[a] > scores[b]; });
  return order;
}

inline std::vector<NodeIndex> rank_nodes(const StatusScores& s) { return rank_nodes(s.scores); }

/// Equal-count partition of a ranking into K levels. Level 1 holds the
/// highest-status nodes; the first N mod K levels get one extra node.
struct StatusLevels {
  std::vector<int> level_of;                   // 1-based level per node
  std::vector<std::vector<NodeIndex>> buckets;  // buckets[k] = level k + 1
  std::vector<NodeIndex> ranking;
  int K = 0;

  std::size_t node_count() const noexcept { return level_of.size(); }
};

inline StatusLevels assign_levels(std::span<const NodeIndex> ranking, int K) {
  const std::size_t n = ranking.size();
  if (K < 1 || static_cast<std::size_t>(K) > n) {
    throw ArgumentError("assign_levels: K=" + std::to_string(K) + " must lie in [1, " +
                        std::to_string(n) + "]");
  }
  StatusLevels lv;
  lv.K = K;
  lv.ranking.assign(ranking.begin(), ranking.end());
  lv.level_of.assign(n, 0);
  lv.buckets.resize(static_cast<std::size_t>(K));
  const std::size_t base = n / static_cast<std::size_t>(K);
  const std::size_t extra = n % static_cast<std::size_t>(K);
  std::size_t pos = 0;
  for (std::size_t k = 0; k < static_cast<std::size_t>(K); ++k) {
    const std::size_t size = base + (k < extra ? 1 : 0);
    auto& bucket = lv.buckets[k];
    bucket.assign(ranking.begin() + static_cast<std::ptrdiff_t>(pos),
                  ranking.begin() + static_cast<std::ptrdiff_t>(pos + size));
    for (NodeIndex v : bucket) {
      ensure<IndexError>(v < n, "assign_levels: ranking is not a permutation");
      lv.level_of[v] = static_cast<int>(k) + 1;
    }
    pos += size;
  }
  return lv;
}

/// Convenience: PageRank, ranking and level assignment in one call.
inline StatusLevels status_levels(const Graph& g, int K, const PageRankOptions& opt = {}) {
  StatusScores s = pagerank(g, opt);
  auto ranking = rank_nodes(s);
  return assign_levels(ranking, K);
}

/// One node drawn uniformly from each level, ordered from level 1 to K.
inline void sample_level_list(const StatusLevels& lv, Rng& rng, std::vector<NodeIndex>& out) {
  out.resize(lv.buckets.size());
  for (std::size_t k = 0; k < lv.buckets.size(); ++k) {
    const auto& bucket = lv.buckets[k];
    out[k] = bucket.size() == 1 ? bucket[0] : bucket[rng.below(bucket.size())];
  }
}

inline std::vector<NodeIndex> sample_level_list(const StatusLevels& lv, Rng& rng) {
  std::vector<NodeIndex> out;
  sample_level_list(lv, rng, out);
  return out;
}

// ---------------------------------------------------------------------------
// CSV export: label,score,rank,level  (rank is the 1-based ranking position)

inline void write_status_csv(const Graph& g, const StatusScores& s, const StatusLevels& lv,
                             std::ostream& out) {
  std::vector<std::size_t> position(g.node_count());
  for (std::size_t r = 0; r < lv.ranking.size(); ++r) position[lv.ranking[r]] = r;
  out << "label,score,rank,level\n";
  for (NodeIndex v : lv.ranking) {
    out << g.label(v) << ',' << format_double(s.scores[v]) << ',' << position[v] + 1 << ','
        << lv.level_of[v] << '\n';
  }
}

struct StatusRow {
  std::string label;
  double score = 0.0;
  std::size_t rank = 0;
  int level = 0;
};

inline std::vector<StatusRow> read_status_csv(std::istream& in) {
  std::vector<StatusRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("label,", 0) == 0) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 4) throw ParseError(line_no, "expected label,score,rank,level");
    StatusRow row;
    row.label = fields[0];
    try {
      if (!parse_double(fields[1], row.score)) throw std::invalid_argument("score");
      row.rank = std::stoul(fields[2]);
      row.level = std::stoi(fields[3]);
    } catch (const std::exception&) {
      throw ParseError(line_no, "malformed numeric field");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace loge

#endif  // LOGE_STATUS_HPP
