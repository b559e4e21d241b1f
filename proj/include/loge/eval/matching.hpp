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

#ifndef LOGE_EVAL_MATCHING_HPP
#define LOGE_EVAL_MATCHING_HPP

#include <numeric>
#include <vector>

#include "loge/graph.hpp"

namespace loge {

inline constexpr NodeIndex kUnmatched = static_cast<NodeIndex>(-1);

/// Maximum-cardinality matching in a general graph (Edmonds' blossom
/// algorithm). Returns mate[v] or kUnmatched.
inline std::vector<NodeIndex> maximum_matching(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<NodeIndex> mate(n, kUnmatched), parent(n), base(n), queue;
  std::vector<char> used(n), in_blossom(n), seen(n);

  auto lca = [&](NodeIndex a, NodeIndex b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (;;) {
      a = base[a];
      seen[a] = 1;
      if (mate[a] == kUnmatched) break;
      a = parent[mate[a]];
    }
    for (;;) {
      b = base[b];
      if (seen[b]) return b;
      b = parent[mate[b]];
    }
  };
  auto mark_path = [&](NodeIndex v, NodeIndex b, NodeIndex child) {
    while (base[v] != b) {
      in_blossom[base[v]] = in_blossom[base[mate[v]]] = 1;
      parent[v] = child;
      child = mate[v];
      v = parent[mate[v]];
    }
  };
  auto find_path = [&](NodeIndex root) -> NodeIndex {
    std::fill(used.begin(), used.end(), 0);
    std::fill(parent.begin(), parent.end(), kUnmatched);
    std::iota(base.begin(), base.end(), NodeIndex{0});
    used[root] = 1;
    queue.assign(1, root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeIndex v = queue[head];
      for (NodeIndex to : g.neighbors(v)) {
        if (base[v] == base[to] || mate[v] == to) continue;
        if (to == root || (mate[to] != kUnmatched && parent[mate[to]] != kUnmatched)) {
          const NodeIndex cur = lca(v, to);
          std::fill(in_blossom.begin(), in_blossom.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (NodeIndex i = 0; i < n; ++i) {
            if (in_blossom[base[i]]) {
              base[i] = cur;
              if (!used[i]) {
                used[i] = 1;
                queue.push_back(i);
              }
            }
          }
        } else if (parent[to] == kUnmatched) {
          parent[to] = v;
          if (mate[to] == kUnmatched) return to;
          used[mate[to]] = 1;
          queue.push_back(mate[to]);
        }
      }
    }
    return kUnmatched;
  };

  // Greedy start, then augment from each exposed vertex.
  for (NodeIndex v = 0; v < n; ++v) {
    if (mate[v] != kUnmatched) continue;
    for (NodeIndex u : g.neighbors(v)) {
      if (mate[u] == kUnmatched) {
        mate[u] = v;
        mate[v] = u;
        break;
      }
    }
  }
  for (NodeIndex v = 0; v < n; ++v) {
    if (mate[v] != kUnmatched) continue;
    NodeIndex u = find_path(v);
    while (u != kUnmatched) {
      const NodeIndex pv = parent[u];
      const NodeIndex next = mate[pv];
      mate[u] = pv;
      mate[pv] = u;
      u = next;
    }
  }
  return mate;
}

inline std::size_t matching_size(const std::vector<NodeIndex>& mate) {
  std::size_t matched = 0;
  for (NodeIndex m : mate) matched += m != kUnmatched ? 1 : 0;
  return matched / 2;
}

}  // namespace loge

#endif  // LOGE_EVAL_MATCHING_HPP
