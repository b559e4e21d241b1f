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

#ifndef LOGE_EVAL_SYNTHETIC_HPP
#define LOGE_EVAL_SYNTHETIC_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "loge/core.hpp"
#include "loge/graph.hpp"
#include "loge/random.hpp"

namespace loge {

inline std::vector<std::string> numeric_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

/// Preferential-attachment graph: a clique on m + 1 seed nodes, then each
/// new node links to m distinct existing nodes chosen with probability
/// proportional to their degree.
inline Graph barabasi_albert(std::size_t n, std::size_t m, Rng& rng) {
  ensure(m >= 1 && n > m, "barabasi_albert: need n > m >= 1");
  std::vector<Edge> edges;
  std::vector<NodeIndex> endpoints;  // each node repeated once per incident edge
  for (NodeIndex a = 0; a <= m; ++a) {
    for (NodeIndex b = a + 1; b <= m; ++b) {
      edges.push_back({a, b});
      endpoints.push_back(a);
      endpoints.push_back(b);
    }
  }
  std::vector<NodeIndex> picks;
  for (auto v = static_cast<NodeIndex>(m + 1); v < n; ++v) {
    picks.clear();
    while (picks.size() < m) {
      NodeIndex u = endpoints[rng.below(endpoints.size())];
      if (std::find(picks.begin(), picks.end(), u) == picks.end()) picks.push_back(u);
    }
    for (NodeIndex u : picks) {
      edges.push_back({u, v});
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  return Graph::from_edges(numeric_labels(n), edges);
}

/// G(n, p) restricted to nodes with at least one edge; survivors are
/// relabeled densely.
inline Graph erdos_renyi(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  std::vector<char> touched(n, 0);
  for (NodeIndex a = 0; a < n; ++a) {
    for (NodeIndex b = a + 1; b < n; ++b) {
      if (rng.uniform() < p) {
        edges.push_back({a, b});
        touched[a] = touched[b] = 1;
      }
    }
  }
  std::vector<NodeIndex> remap(n);
  std::size_t kept = 0;
  for (std::size_t v = 0; v < n; ++v) remap[v] = touched[v] ? static_cast<NodeIndex>(kept++) : 0;
  for (Edge& e : edges) e = {remap[e.a], remap[e.b]};
  return Graph::from_edges(numeric_labels(kept), edges);
}

}  // namespace loge

#endif  // LOGE_EVAL_SYNTHETIC_HPP
