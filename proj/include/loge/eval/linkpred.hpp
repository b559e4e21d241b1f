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

#ifndef LOGE_EVAL_LINKPRED_HPP
#define LOGE_EVAL_LINKPRED_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "loge/core.hpp"
#include "loge/eval/classifier.hpp"
#include "loge/eval/matching.hpp"
#include "loge/eval/metrics.hpp"
#include "loge/graph.hpp"
#include "loge/random.hpp"

namespace loge {

// ---------------------------------------------------------------------------
// Edge removal

struct SplitResult {
  Graph train;                // same node set and labels as the input graph
  std::vector<Edge> removed;  // held-out edges, in removal order
  std::size_t target = 0;     // floor(fraction * M)
  double achieved_fraction = 0.0;
  bool shortfall = false;     // fewer than `target` edges could be removed
};

namespace detail {

inline std::uint64_t pair_key(NodeIndex a, NodeIndex b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

}  // namespace detail

/// Removes floor(fraction * M) edges while every node keeps at least one.
///
/// Edges are visited in one shuffled order and removed whenever both
/// endpoints still have degree >= 2. If that greedy pass stops short, the
/// removal set is rebuilt around a minimum edge cover (from a maximum
/// matching), which reaches the target whenever any valid removal set of
/// that size exists; greedy picks are kept first, in shuffle order.
inline SplitResult split_edges(const Graph& g, double fraction, Rng& rng) {
  ensure(fraction > 0.0 && fraction < 1.0, "split_edges: fraction must lie in (0, 1)");
  std::vector<Edge> edges = g.edges();
  rng.shuffle(std::span<Edge>(edges));
  const std::size_t m = edges.size();
  const auto target = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(m)));

  std::vector<std::size_t> deg(g.node_count());
  for (NodeIndex v = 0; v < deg.size(); ++v) deg[v] = g.degree(v);
  std::vector<char> removed(m, 0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < m && count < target; ++i) {
    const Edge& e = edges[i];
    if (deg[e.a] >= 2 && deg[e.b] >= 2) {
      --deg[e.a];
      --deg[e.b];
      removed[i] = 1;
      ++count;
    }
  }

  if (count < target) {
    std::unordered_map<std::uint64_t, std::size_t> position;
    position.reserve(m);
    for (std::size_t i = 0; i < m; ++i) position.emplace(detail::pair_key(edges[i].a, edges[i].b), i);
    std::vector<char> in_cover(m, 0);
    const auto mate = maximum_matching(g);
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      if (mate[v] != kUnmatched) {
        in_cover[position.at(detail::pair_key(v, mate[v]))] = 1;
        continue;
      }
      // Exposed vertex: cover it with an edge the greedy pass kept, if any.
      std::size_t pick = m;
      for (NodeIndex u : g.neighbors(v)) {
        const std::size_t i = position.at(detail::pair_key(v, u));
        if (pick == m) pick = i;
        if (!removed[i]) {
          pick = i;
          break;
        }
      }
      in_cover[pick] = 1;
    }
    std::vector<char> chosen(m, 0);
    count = 0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < m && count < target; ++i) {
        if (in_cover[i] || chosen[i]) continue;
        if (pass == 0 && !removed[i]) continue;
        chosen[i] = 1;
        ++count;
      }
    }
    removed.swap(chosen);
  }

  SplitResult out;
  std::vector<Edge> kept;
  kept.reserve(m - count);
  out.removed.reserve(count);
  for (std::size_t i = 0; i < m; ++i) {
    Edge e = edges[i];
    if (e.a > e.b) std::swap(e.a, e.b);
    (removed[i] ? out.removed : kept).push_back(e);
  }
  out.train = Graph::from_edges(g.labels(), kept);
  out.target = target;
  out.achieved_fraction = m == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(m);
  out.shortfall = count < target;
  return out;
}

// ---------------------------------------------------------------------------
// Labeled pairs

enum class PairPurpose { train, test };

/// Node pairs with binary labels (1 = edge, 0 = non-edge).
struct LabeledPairSet {
  std::vector<Edge> pairs;
  std::vector<int> labels;
  PairPurpose purpose = PairPurpose::train;

  std::size_t size() const noexcept { return pairs.size(); }
  void add(Edge e, int label) {
    pairs.push_back(e);
    labels.push_back(label);
  }
};

struct PairSets {
  LabeledPairSet train;
  LabeledPairSet test;
};

/// Train positives are the remaining edges, test positives the removed
/// ones. Each set gets as many negatives as positives, drawn uniformly from
/// pairs that are not edges of the ORIGINAL graph and never shared between
/// the two sets.
inline PairSets build_pair_sets(const Graph& original, const Graph& train,
                                std::span<const Edge> removed, Rng& rng) {
  ensure(original.node_count() == train.node_count(), "build_pair_sets: node sets differ");
  const std::size_t n = original.node_count();
  PairSets out;
  out.train.purpose = PairPurpose::train;
  out.test.purpose = PairPurpose::test;
  for (const Edge& e : train.edges()) out.train.add(e, 1);
  for (const Edge& e : removed) out.test.add(e, 1);

  const std::size_t need_train = out.train.size();
  const std::size_t need_test = out.test.size();
  const std::size_t need = need_train + need_test;
  const std::uint64_t all_pairs = std::uint64_t{n} * (n - 1) / 2;
  const std::uint64_t available = all_pairs - original.edge_count();
  if (need > available) {
    throw ArgumentError("build_pair_sets: graph too dense; need " + std::to_string(need) +
                        " non-adjacent pairs, only " + std::to_string(available) + " exist");
  }

  std::vector<Edge> negatives;
  negatives.reserve(need);
  if (need * 2 <= available) {
    std::unordered_set<std::uint64_t> used;
    used.reserve(need * 2);
    while (negatives.size() < need) {
      auto a = static_cast<NodeIndex>(rng.below(n));
      auto b = static_cast<NodeIndex>(rng.below(n));
      if (a == b || original.has_edge(a, b)) continue;
      if (!used.insert(detail::pair_key(a, b)).second) continue;
      if (a > b) std::swap(a, b);
      negatives.push_back({a, b});
    }
  } else {
    std::vector<Edge> pool;
    pool.reserve(static_cast<std::size_t>(available));
    for (NodeIndex a = 0; a < n; ++a) {
      for (NodeIndex b = a + 1; b < n; ++b) {
        if (!original.has_edge(a, b)) pool.push_back({a, b});
      }
    }
    for (std::size_t i = 0; i < need; ++i) {
      std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
      negatives.push_back(pool[i]);
    }
  }
  for (std::size_t i = 0; i < need_train; ++i) out.train.add(negatives[i], 0);
  for (std::size_t i = need_train; i < need; ++i) out.test.add(negatives[i], 0);
  return out;
}

// ---------------------------------------------------------------------------
// Pair features

inline std::vector<double> edge_representation(std::span<const double> rep_a,
                                               std::span<const double> rep_b) {
  ensure(rep_a.size() == rep_b.size(), "edge_representation: length mismatch");
  std::vector<double> out(rep_a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = rep_a[i] + rep_b[i];
  return out;
}

/// [common neighbors, Jaccard coefficient, preferential attachment].
inline std::array<double, 3> hfb_features(const Graph& g, NodeIndex a, NodeIndex b) {
  auto na = g.neighbors(a);
  auto nb = g.neighbors(b);
  std::size_t common = 0;
  for (auto i = na.begin(), j = nb.begin(); i != na.end() && j != nb.end();) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  const std::size_t uni = na.size() + nb.size() - common;
  const double jaccard = uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
  return {static_cast<double>(common), jaccard,
          static_cast<double>(na.size()) * static_cast<double>(nb.size())};
}

template <class F>
concept PairFeaturizer = requires(const F& f, NodeIndex a, NodeIndex b, std::span<double> out) {
  { f.dim() } -> std::convertible_to<std::size_t>;
  f(a, b, out);
};

/// Element-wise sum of two node representations taken from a row-major table.
class SumFeaturizer {
 public:
  SumFeaturizer(std::span<const double> reps, std::size_t dim) : reps_(reps), dim_(dim) {}
  std::size_t dim() const noexcept { return dim_; }
  void operator()(NodeIndex a, NodeIndex b, std::span<double> out) const {
    const double* ra = reps_.data() + std::size_t{a} * dim_;
    const double* rb = reps_.data() + std::size_t{b} * dim_;
    for (std::size_t i = 0; i < dim_; ++i) out[i] = ra[i] + rb[i];
  }

 private:
  std::span<const double> reps_;
  std::size_t dim_;
};

class HfbFeaturizer {
 public:
  explicit HfbFeaturizer(const Graph& g) : g_(&g) {}
  std::size_t dim() const noexcept { return 3; }
  void operator()(NodeIndex a, NodeIndex b, std::span<double> out) const {
    auto f = hfb_features(*g_, a, b);
    std::copy(f.begin(), f.end(), out.begin());
  }

 private:
  const Graph* g_;
};

template <PairFeaturizer F>
FeatureMatrix build_features(const LabeledPairSet& set, const F& featurizer) {
  FeatureMatrix x(set.size(), featurizer.dim());
  for (std::size_t i = 0; i < set.size(); ++i) featurizer(set.pairs[i].a, set.pairs[i].b, x.row(i));
  return x;
}

template <PairFeaturizer F>
LinearClassifier fit_classifier(const LabeledPairSet& train, const F& featurizer,
                                const FitOptions& opt = {}) {
  return fit_logistic(build_features(train, featurizer), train.labels, opt).classifier;
}

struct LinkPredictionReport {
  std::string method;
  double accuracy = 0.0;
  double auc = 0.0;
  double removed_fraction = 0.0;
};

/// Accuracy at probability 0.5 and rank-statistic AUC on a labeled set.
template <PairFeaturizer F>
LinkPredictionReport evaluate(const LinearClassifier& c, const LabeledPairSet& test,
                              const F& featurizer, std::string method = {},
                              double removed_fraction = 0.0) {
  ensure(test.size() > 0, "evaluate: empty test set");
  std::vector<double> feature(featurizer.dim());
  std::vector<double> prob(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) {
    featurizer(test.pairs[i].a, test.pairs[i].b, feature);
    prob[i] = c.probability(feature);
  }
  LinkPredictionReport r;
  r.method = std::move(method);
  r.removed_fraction = removed_fraction;
  r.accuracy = accuracy(prob, test.labels);
  r.auc = auc(prob, test.labels);
  return r;
}

// ---------------------------------------------------------------------------
// CSV: label_a,label_b,class

inline void write_pairs(const Graph& g, const LabeledPairSet& set, std::ostream& out) {
  out << "label_a,label_b,class\n";
  for (std::size_t i = 0; i < set.size(); ++i) {
    out << g.label(set.pairs[i].a) << ',' << g.label(set.pairs[i].b) << ',' << set.labels[i] << '\n';
  }
}

inline LabeledPairSet read_pairs(const Graph& g, std::istream& in, PairPurpose purpose) {
  LabeledPairSet set;
  set.purpose = purpose;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (line_no == 1 && line.rfind("label_a,", 0) == 0)) continue;
    std::stringstream ss(line);
    std::string a, b, cls, extra;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, cls, ',') ||
        std::getline(ss, extra, ',')) {
      throw ParseError(line_no, "expected label_a,label_b,class");
    }
    if (cls != "0" && cls != "1") throw ParseError(line_no, "class must be 0 or 1");
    set.add({g.index_of(a), g.index_of(b)}, cls == "1" ? 1 : 0);
  }
  return set;
}

}  // namespace loge

#endif  // LOGE_EVAL_LINKPRED_HPP
