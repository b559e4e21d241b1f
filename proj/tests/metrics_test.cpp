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
#include "loge/random.hpp"
#include "oracles.hpp"

using namespace loge;

TEST(AverageRanks, Ties) {
  std::vector<double> x = {3.0, 1.0, 3.0, 2.0};
  EXPECT_EQ(average_ranks(x), (std::vector<double>{3.5, 1.0, 3.5, 2.0}));
}

TEST(Auc, KnownValues) {
  std::vector<int> y = {1, 1, 0, 0};
  EXPECT_DOUBLE_EQ(auc(std::vector<double>{0.9, 0.8, 0.2, 0.1}, y), 1.0);
  EXPECT_DOUBLE_EQ(auc(std::vector<double>{0.1, 0.2, 0.8, 0.9}, y), 0.0);
  EXPECT_DOUBLE_EQ(auc(std::vector<double>{0.5, 0.5, 0.5, 0.5}, y), 0.5);
  EXPECT_DOUBLE_EQ(auc(std::vector<double>{0.9, 0.2, 0.8, 0.1}, y), 0.75);
}

TEST(Auc, MatchesPairwiseOracle) {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(60);
    std::vector<double> s(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = std::round(rng.uniform() * 8);  // many ties
      y[i] = static_cast<int>(rng.below(2));
    }
    y[0] = 1;
    y[1] = 0;
    EXPECT_NEAR(auc(s, y), oracle::pairwise_auc(s, y), 1e-12);
  }
}

TEST(Auc, RequiresBothClasses) {
  std::vector<double> s = {0.1, 0.2};
  EXPECT_THROW(auc(s, std::vector<int>{1, 1}), ArgumentError);
}

TEST(Accuracy, Threshold) {
  std::vector<double> p = {0.5, 0.49, 0.9, 0.1};
  EXPECT_DOUBLE_EQ(accuracy(p, std::vector<int>{1, 0, 1, 0}), 1.0);
  EXPECT_DOUBLE_EQ(accuracy(p, std::vector<int>{0, 0, 1, 1}), 0.5);
}

TEST(Spearman, KnownValues) {
  std::vector<double> a = {1, 2, 3, 4, 5};
  EXPECT_DOUBLE_EQ(spearman(a, std::vector<double>{10, 20, 30, 40, 50}), 1.0);
  EXPECT_DOUBLE_EQ(spearman(a, std::vector<double>{5, 4, 3, 2, 1}), -1.0);
  EXPECT_DOUBLE_EQ(spearman(a, std::vector<double>{1, 4, 9, 16, 1000}), 1.0);
}

TEST(Spearman, MatchesDefinitionalOracle) {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + rng.below(40);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = std::round(rng.uniform() * 5);
      b[i] = a[i] + rng.uniform(-2, 2);
    }
    a[0] = -1;  // guarantee variance
    EXPECT_NEAR(spearman(a, b), oracle::definitional_spearman(a, b), 1e-12);
  }
}

TEST(Spearman, ZeroVarianceThrows) {
  std::vector<double> a = {1, 1, 1}, b = {1, 2, 3};
  EXPECT_THROW(spearman(a, b), ArgumentError);
}
