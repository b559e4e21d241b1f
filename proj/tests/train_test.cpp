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

#include <gtest/gtest.h>

#include "loge/eval/metrics.hpp"
#include "loge/eval/synthetic.hpp"
#include "loge/train.hpp"
#include "test_util.hpp"

using namespace loge;

namespace {

struct Fixture {
  Graph graph;
  StatusScores scores;
  StatusLevels levels;
};

Fixture scale_free(std::size_t n, int k, std::uint64_t seed = 11) {
  Rng rng(seed);
  Fixture f{barabasi_albert(n, 3, rng), {}, {}};
  f.scores = pagerank(f.graph);
  f.levels = assign_levels(rank_nodes(f.scores), k);
  return f;
}

bool rows_equal(std::span<const double> a, std::span<const double> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

TEST(TrainGine, DeterministicForSeed) {
  auto f = scale_free(80, 10);
  GineConfig cfg;
  cfg.lists = 200;
  cfg.dim = 8;
  cfg.levels = 10;
  EXPECT_TRUE(train_gine(f.levels, cfg) == train_gine(f.levels, cfg));
  cfg.seed = 43;
  auto other = train_gine(f.levels, cfg);
  cfg.seed = 42;
  EXPECT_FALSE(train_gine(f.levels, cfg) == other);
}

TEST(TrainGine, SingleListTouchesExactlyKRows) {
  auto f = scale_free(60, 6);
  GineConfig cfg;
  cfg.lists = 1;
  cfg.dim = 4;
  cfg.levels = 6;
  Rng init = Rng::derive(cfg.seed, 0);
  auto start = EmbeddingModel::initialized(60, 4, Mapping::gine, init);
  TrainStats stats;
  auto m = train_gine(f.levels, cfg, &stats);
  EXPECT_EQ(stats.global_updates, 1u);
  std::size_t changed = 0;
  for (NodeIndex v = 0; v < 60; ++v) {
    if (!rows_equal(m.source(v), start.source(v))) ++changed;
    EXPECT_TRUE(rows_equal(m.target(v), start.target(v)));
  }
  EXPECT_EQ(changed, 6u);
  EXPECT_FALSE(rows_equal(m.w(), start.w()));
  for (double x : m.w_prime()) EXPECT_EQ(x, 0.0);
}

TEST(TrainGine, LearnsTheRanking) {
  auto f = scale_free(300, 10);
  GineConfig cfg;
  cfg.lists = 20000;
  cfg.dim = 16;
  cfg.levels = 10;
  cfg.eta = 0.05;
  auto m = train_gine(f.levels, cfg);
  std::vector<double> pred(300), score(f.scores.scores.begin(), f.scores.scores.end());
  for (NodeIndex v = 0; v < 300; ++v) pred[v] = status_value_gine(m, v);
  EXPECT_GT(spearman(pred, score), 0.8);
}

TEST(TrainGine, RejectsMismatchedLevels) {
  auto f = scale_free(40, 5);
  GineConfig cfg;
  cfg.lists = 1;
  cfg.levels = 6;
  EXPECT_THROW(train_gine(f.levels, cfg), ArgumentError);
  cfg.levels = 5;
  cfg.lists = 0;
  EXPECT_THROW(train_gine(f.levels, cfg), ArgumentError);
}

TEST(TrainLog, DeterministicForSeed) {
  auto f = scale_free(60, 6);
  LogConfig cfg;
  cfg.dim = 8;
  cfg.levels = 6;
  cfg.epochs = 2;
  EXPECT_TRUE(train_log(f.graph, f.levels, cfg) == train_log(f.graph, f.levels, cfg));
}

TEST(TrainLog, LambdaZeroNeverTouchesStatusParameters) {
  auto f = scale_free(60, 6);
  LogConfig cfg;
  cfg.dim = 8;
  cfg.levels = 6;
  cfg.epochs = 3;
  cfg.lambda = 0.0;
  Rng init = Rng::derive(cfg.seed, 0);
  auto start = EmbeddingModel::initialized(60, 8, Mapping::log, init);
  TrainStats stats;
  auto m = train_log(f.graph, f.levels, cfg, &stats);
  EXPECT_EQ(stats.global_updates, 0u);
  EXPECT_TRUE(rows_equal(m.w(), start.w()));
  EXPECT_TRUE(rows_equal(m.w_prime(), start.w_prime()));
}

TEST(TrainLog, UpdateCountsPerEpoch) {
  auto f = scale_free(50, 5);
  LogConfig cfg;
  cfg.dim = 4;
  cfg.levels = 5;
  cfg.epochs = 3;
  cfg.lambda = 1.0;
  TrainStats stats;
  train_log(f.graph, f.levels, cfg, &stats);
  ASSERT_EQ(stats.local_updates_per_epoch.size(), 3u);
  for (std::size_t e = 0; e < 3; ++e) {
    EXPECT_EQ(stats.local_updates_per_epoch[e], 2 * f.graph.edge_count());
    EXPECT_EQ(stats.global_updates_per_epoch[e], 50u);
  }
}

TEST(TrainLog, GlobalUpdateRateTracksLambda) {
  auto f = scale_free(400, 8);
  LogConfig cfg;
  cfg.dim = 2;
  cfg.levels = 8;
  cfg.epochs = 5;
  cfg.lambda = 0.3;
  cfg.n_negative = 1;
  TrainStats stats;
  train_log(f.graph, f.levels, cfg, &stats);
  // 2000 Bernoulli(0.3) draws: sd ~ 20.5.
  EXPECT_NEAR(static_cast<double>(stats.global_updates), 600.0, 90.0);
}

TEST(TrainLog, LocalTrainingReducesSoftmaxObjective) {
  auto f = scale_free(120, 6);
  LogConfig cfg;
  cfg.dim = 16;
  cfg.levels = 6;
  cfg.epochs = 1;
  cfg.lambda = 0.0;
  Rng init = Rng::derive(cfg.seed, 0);
  auto start = EmbeddingModel::initialized(120, 16, Mapping::log, init);
  const double before = softmax_local_objective(start, f.graph);
  cfg.epochs = 100;
  auto m = train_log(f.graph, f.levels, cfg);
  EXPECT_LT(softmax_local_objective(m, f.graph), 0.75 * before);
}

TEST(TrainLog, ThreadedRunStaysFiniteAndCountsLocalUpdates) {
  auto f = scale_free(200, 8);
  LogConfig cfg;
  cfg.dim = 8;
  cfg.levels = 8;
  cfg.epochs = 2;
  cfg.threads = 3;
  TrainStats stats;
  auto m = train_log(f.graph, f.levels, cfg, &stats);
  EXPECT_TRUE(m.all_finite());
  EXPECT_EQ(stats.local_updates, 2 * 2 * f.graph.edge_count());
}

TEST(TrainLog, LearningRateDecayStillConverges) {
  auto f = scale_free(100, 5);
  LogConfig cfg;
  cfg.dim = 8;
  cfg.levels = 5;
  cfg.epochs = 3;
  cfg.lr_decay = true;
  auto m = train_log(f.graph, f.levels, cfg);
  EXPECT_TRUE(m.all_finite());
  EXPECT_FALSE(m == train_log(f.graph, f.levels, LogConfig{.dim = 8, .epochs = 3, .levels = 5}));
}

TEST(TrainLog, RejectsBadConfig) {
  auto f = scale_free(40, 5);
  LogConfig cfg;
  cfg.levels = 5;
  cfg.lambda = 1.5;
  EXPECT_THROW(train_log(f.graph, f.levels, cfg), ArgumentError);
  cfg.lambda = 0.3;
  cfg.epochs = 0;
  EXPECT_THROW(train_log(f.graph, f.levels, cfg), ArgumentError);
}
