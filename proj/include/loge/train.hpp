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

#ifndef LOGE_TRAIN_HPP
#define LOGE_TRAIN_HPP

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "loge/core.hpp"
#include "loge/graph.hpp"
#include "loge/model.hpp"
#include "loge/random.hpp"
#include "loge/status.hpp"

namespace loge {

/// Global-status-only trainer settings.
struct GineConfig {
  std::size_t lists = 0;  // L, required
  std::size_t dim = 128;
  double eta = 0.025;
  int levels = 60;
  std::uint64_t seed = 42;
  bool lr_decay = false;
  int threads = 1;

  void validate() const {
    ensure(lists >= 1, "gine: lists (L) must be >= 1");
    ensure(dim >= 1, "gine: dim must be >= 1");
    ensure(eta > 0.0, "gine: learning rate must be positive");
    ensure(levels >= 2, "gine: levels (K) must be >= 2");
    ensure(threads >= 1, "gine: threads must be >= 1");
  }
};

/// Joint local + global trainer settings.
struct LogConfig {
  std::size_t dim = 128;
  double eta1 = 0.025;   // local step
  double eta2 = 0.0025;  // global step
  double lambda = 0.3;
  std::size_t n_negative = 5;
  std::size_t epochs = 5;
  int levels = 60;
  std::uint64_t seed = 42;
  bool lr_decay = false;
  int threads = 1;

  void validate() const {
    ensure(dim >= 1, "log: dim must be >= 1");
    ensure(eta1 > 0.0 && eta2 > 0.0, "log: learning rates must be positive");
    ensure(lambda >= 0.0 && lambda <= 1.0, "log: lambda must lie in [0, 1]");
    ensure(epochs >= 1, "log: epochs must be >= 1");
    ensure(levels >= 2, "log: levels (K) must be >= 2");
    ensure(threads >= 1, "log: threads must be >= 1");
  }
};

/// Update counters gathered during training.
struct TrainStats {
  std::uint64_t local_updates = 0;
  std::uint64_t global_updates = 0;
  std::vector<std::uint64_t> local_updates_per_epoch;
  std::vector<std::uint64_t> global_updates_per_epoch;
};

namespace detail {

inline double decayed(double eta, bool decay, double progress) {
  if (!decay) return eta;
  return eta * std::max(1e-4, 1.0 - progress);
}

inline bool finite_values(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Stream layout: 0 initializes the model, 1 shuffles epochs, 2 + w feeds worker w.
constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kShuffleStream = 1;
constexpr std::uint64_t kWorkerStream = 2;

template <class Fn>
void run_workers(int threads, Fn&& fn) {
  if (threads == 1) {
    fn(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back([&fn, t] { fn(t); });
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// Ranking-only SGD: L sampled level lists, each followed by one gradient
/// step on U (list rows) and w. U' and w' stay zero.
///
/// With threads > 1 the lists are split across workers that write to the
/// shared model without synchronization; results are then not reproducible.
inline EmbeddingModel train_gine(const StatusLevels& levels, const GineConfig& cfg,
                                 TrainStats* stats = nullptr) {
  cfg.validate();
  ensure(levels.K == cfg.levels, "gine: status levels were built with K=" +
                                     std::to_string(levels.K) + ", config says " +
                                     std::to_string(cfg.levels));
  ensure(levels.node_count() >= static_cast<std::size_t>(cfg.levels), "gine: N < K");

  Rng init = Rng::derive(cfg.seed, detail::kInitStream);
  EmbeddingModel model = EmbeddingModel::initialized(levels.node_count(), cfg.dim, Mapping::gine, init);

  const auto workers = static_cast<std::size_t>(cfg.threads);
  std::atomic<std::uint64_t> done{0};
  detail::run_workers(cfg.threads, [&](int t) {
    const auto w = static_cast<std::size_t>(t);
    const std::size_t begin = cfg.lists * w / workers;
    const std::size_t end = cfg.lists * (w + 1) / workers;
    Rng rng = Rng::derive(cfg.seed, detail::kWorkerStream + w);
    std::vector<NodeIndex> list;
    ListGradient grad;
    for (std::size_t i = begin; i < end; ++i) {
      sample_level_list(levels, rng, list);
      global_list_loss(model, list, Mapping::gine, &grad);
      assert(detail::finite_values(grad.d_source) && detail::finite_values(grad.d_w));
      const double progress =
          static_cast<double>((i - begin) * workers) / static_cast<double>(cfg.lists);
      apply_list_gradient(model, grad, detail::decayed(cfg.eta, cfg.lr_decay, progress));
    }
    done.fetch_add(end - begin, std::memory_order_relaxed);
  });

  if (stats) {
    *stats = {};
    stats->global_updates = done.load();
    stats->global_updates_per_epoch = {stats->global_updates};
    stats->local_updates_per_epoch = {0};
  }
  return model;
}

/// Joint SGD over the negative-sampling local objective and the level-list
/// ranking objective. Each epoch shuffles the nodes; every visited node v
/// first takes one local step per neighbor (N_e fresh negatives each, step
/// eta1), then with probability lambda one global list step (step eta2).
///
/// threads > 1 shards the shuffled node order across workers sharing the
/// model without locks (asynchronous SGD, lost updates tolerated).
inline EmbeddingModel train_log(const Graph& g, const StatusLevels& levels, const LogConfig& cfg,
                                TrainStats* stats = nullptr) {
  cfg.validate();
  const std::size_t n = g.node_count();
  ensure(levels.node_count() == n, "log: status levels do not match the graph");
  ensure(levels.K == cfg.levels, "log: status levels were built with K=" +
                                     std::to_string(levels.K) + ", config says " +
                                     std::to_string(cfg.levels));

  Rng init = Rng::derive(cfg.seed, detail::kInitStream);
  EmbeddingModel model = EmbeddingModel::initialized(n, cfg.dim, Mapping::log, init);
  const NoiseTable noise(g);

  Rng shuffle_rng = Rng::derive(cfg.seed, detail::kShuffleStream);
  const auto workers = static_cast<std::size_t>(cfg.threads);
  std::vector<Rng> worker_rng;
  for (std::size_t w = 0; w < workers; ++w) {
    worker_rng.push_back(Rng::derive(cfg.seed, detail::kWorkerStream + w));
  }

  std::vector<NodeIndex> order(n);
  std::iota(order.begin(), order.end(), NodeIndex{0});
  const double total_local = static_cast<double>(cfg.epochs) * 2.0 * static_cast<double>(g.edge_count());

  TrainStats local_stats;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle_rng.shuffle(std::span<NodeIndex>(order));
    std::atomic<std::uint64_t> local_count{0};
    std::atomic<std::uint64_t> global_count{0};
    const double epoch_base = static_cast<double>(epoch) * 2.0 * static_cast<double>(g.edge_count());

    detail::run_workers(cfg.threads, [&](int t) {
      const auto w = static_cast<std::size_t>(t);
      Rng& rng = worker_rng[w];
      const std::size_t begin = n * w / workers;
      const std::size_t end = n * (w + 1) / workers;
      std::vector<NodeIndex> negatives(cfg.n_negative);
      std::vector<NodeIndex> list;
      LocalGradient local_grad;
      ListGradient list_grad;
      std::uint64_t my_local = 0;
      std::uint64_t my_global = 0;
      for (std::size_t i = begin; i < end; ++i) {
        const NodeIndex v = order[i];
        const double progress =
            (epoch_base + static_cast<double>(my_local * workers)) / total_local;
        const double eta1 = detail::decayed(cfg.eta1, cfg.lr_decay, progress);
        const double eta2 = detail::decayed(cfg.eta2, cfg.lr_decay, progress);
        for (NodeIndex ctx : g.neighbors(v)) {
          for (auto& neg : negatives) neg = noise.sample(rng);
          local_term(model, v, ctx, negatives, &local_grad);
          assert(detail::finite_values(local_grad.d_source) &&
                 detail::finite_values(local_grad.d_targets));
          apply_local_gradient(model, local_grad, eta1);
          ++my_local;
        }
        if (rng.uniform() < cfg.lambda) {
          sample_level_list(levels, rng, list);
          global_list_loss(model, list, Mapping::log, &list_grad);
          assert(detail::finite_values(list_grad.d_source) &&
                 detail::finite_values(list_grad.d_target));
          apply_list_gradient(model, list_grad, eta2);
          ++my_global;
        }
      }
      local_count.fetch_add(my_local, std::memory_order_relaxed);
      global_count.fetch_add(my_global, std::memory_order_relaxed);
    });

    local_stats.local_updates_per_epoch.push_back(local_count.load());
    local_stats.global_updates_per_epoch.push_back(global_count.load());
    local_stats.local_updates += local_count.load();
    local_stats.global_updates += global_count.load();
  }
  if (stats) *stats = std::move(local_stats);
  return model;
}

}  // namespace loge

#endif  // LOGE_TRAIN_HPP
