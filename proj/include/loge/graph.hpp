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

#ifndef LOGE_GRAPH_HPP
#define LOGE_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "loge/core.hpp"
#include "loge/random.hpp"

namespace loge {

struct Edge {
  NodeIndex a;
  NodeIndex b;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph in compressed adjacency form. Node indices are
/// dense in [0, node_count()); every neighbor list is sorted.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list over `labels.size()` nodes. Self-loops are
  /// dropped and parallel edges collapsed.
  static Graph from_edges(std::vector<std::string> labels, std::span<const Edge> edges) {
    Graph g;
    const std::size_t n = labels.size();
    g.labels_ = std::move(labels);
    std::vector<std::size_t> counts(n + 1, 0);
    for (const Edge& e : edges) {
      ensure<IndexError>(e.a < n && e.b < n, "edge endpoint out of range");
      if (e.a == e.b) continue;
      ++counts[e.a + 1];
      ++counts[e.b + 1];
    }
    for (std::size_t i = 0; i < n; ++i) counts[i + 1] += counts[i];
    std::vector<NodeIndex> raw(counts[n]);
    std::vector<std::size_t> fill(counts.begin(), counts.end() - 1);
    for (const Edge& e : edges) {
      if (e.a == e.b) continue;
      raw[fill[e.a]++] = e.b;
      raw[fill[e.b]++] = e.a;
    }
    g.offsets_.assign(n + 1, 0);
    g.neighbors_.reserve(raw.size());
    for (std::size_t v = 0; v < n; ++v) {
      auto first = raw.begin() + static_cast<std::ptrdiff_t>(counts[v]);
      auto last = raw.begin() + static_cast<std::ptrdiff_t>(counts[v + 1]);
      std::sort(first, last);
      last = std::unique(first, last);
      g.neighbors_.insert(g.neighbors_.end(), first, last);
      g.offsets_[v + 1] = g.neighbors_.size();
    }
    g.neighbors_.shrink_to_fit();
    g.index_.reserve(n);
    for (std::size_t v = 0; v < n; ++v) g.index_.emplace(g.labels_[v], static_cast<NodeIndex>(v));
    ensure(g.index_.size() == n, "duplicate node label");
    return g;
  }

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }
  bool empty() const noexcept { return labels_.empty(); }

  std::span<const NodeIndex> neighbors(NodeIndex v) const {
    check(v);
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::size_t degree(NodeIndex v) const {
    check(v);
    return offsets_[v + 1] - offsets_[v];
  }

  bool has_edge(NodeIndex a, NodeIndex b) const {
    auto adj = neighbors(a);
    return std::binary_search(adj.begin(), adj.end(), b);
  }

  const std::string& label(NodeIndex v) const {
    check(v);
    return labels_[v];
  }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Throws IndexError for labels not in the graph.
  NodeIndex index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw IndexError("unknown node label '" + label + "'");
    return it->second;
  }
  bool contains(const std::string& label) const { return index_.count(label) != 0; }

  /// Each undirected edge once, as (a, b) with a < b, in index order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (NodeIndex v = 0; v < node_count(); ++v) {
      for (NodeIndex u : neighbors(v)) {
        if (v < u) out.push_back({v, u});
      }
    }
    return out;
  }

 private:
  void check(NodeIndex v) const {
    if (v >= labels_.size()) {
      throw IndexError("node index " + std::to_string(v) + " out of range (N=" +
                       std::to_string(labels_.size()) + ")");
    }
  }

  std::vector<std::string> labels_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeIndex> neighbors_;
  std::unordered_map<std::string, NodeIndex> index_;
};

inline std::size_t degree(const Graph& g, NodeIndex v) { return g.degree(v); }

/// Reads a whitespace-separated edge list. Blank lines and lines starting
/// with '#' are skipped; self-loop lines are dropped without registering
/// their label, so every node of the result has degree >= 1.
inline Graph load_edge_list(std::istream& in) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeIndex> index;
  std::vector<Edge> edges;
  auto intern = [&](const std::string& s) {
    auto [it, inserted] = index.try_emplace(s, static_cast<NodeIndex>(labels.size()));
    if (inserted) labels.push_back(s);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream tokens(line);
    std::string a, b, extra;
    if (!(tokens >> a >> b) || (tokens >> extra)) {
      throw ParseError(line_no, "expected two node labels");
    }
    if (a == b) continue;
    NodeIndex ia = intern(a);
    NodeIndex ib = intern(b);
    edges.push_back({ia, ib});
  }
  if (edges.empty()) throw EmptyGraphError();
  return Graph::from_edges(std::move(labels), edges);
}

inline Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list '" + path + "'");
  return load_edge_list(in);
}

inline void write_edge_list(const Graph& g, std::ostream& out) {
  for (const Edge& e : g.edges()) out << g.label(e.a) << ' ' << g.label(e.b) << '\n';
}

/// Inverse-CDF sampler over nodes with P(v) proportional to degree(v)^0.75.
class NoiseTable {
 public:
  NoiseTable() = default;

  explicit NoiseTable(const Graph& g) : NoiseTable(degrees_of(g)) {}

  explicit NoiseTable(std::span<const std::size_t> degrees) {
    cumulative_.reserve(degrees.size());
    double total = 0.0;
    for (std::size_t d : degrees) {
      total += std::pow(static_cast<double>(d), 0.75);
      cumulative_.push_back(total);
    }
  }

  std::size_t size() const noexcept { return cumulative_.size(); }
  double total_weight() const noexcept { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
  std::span<const double> cumulative_weights() const noexcept { return cumulative_; }

  double probability(NodeIndex v) const {
    double lo = v == 0 ? 0.0 : cumulative_[v - 1];
    return (cumulative_[v] - lo) / total_weight();
  }

  NodeIndex sample(Rng& rng) const {
    const double r = rng.uniform() * total_weight();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
    if (it == cumulative_.end()) --it;
    return static_cast<NodeIndex>(it - cumulative_.begin());
  }

 private:
  static std::vector<std::size_t> degrees_of(const Graph& g) {
    std::vector<std::size_t> d(g.node_count());
    for (NodeIndex v = 0; v < d.size(); ++v) d[v] = g.degree(v);
    return d;
  }

  std::vector<double> cumulative_;
};

inline NoiseTable build_noise_table(const Graph& g) { return NoiseTable(g); }

inline NodeIndex sample_negative(const NoiseTable& table, Rng& rng) { return table.sample(rng); }

}  // namespace loge

#endif  // LOGE_GRAPH_HPP
