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

#include <sstream>

#include "loge/eval/scatter.hpp"
#include "loge/random.hpp"

using namespace loge;

namespace {

EmbeddingTable table(std::size_t n, std::size_t dim, const std::vector<double>& values) {
  EmbeddingTable t;
  for (std::size_t i = 0; i < n; ++i) t.labels.push_back(std::to_string(i));
  t.dim = dim;
  t.values = values;
  return t;
}

}  // namespace

TEST(LeastSquares, RecoversExactLinearModel) {
  Rng rng(1);
  FeatureMatrix a(30, 3);
  std::vector<double> y(30);
  for (std::size_t i = 0; i < 30; ++i) {
    a.row(i)[0] = 1.0;
    a.row(i)[1] = rng.uniform(-1, 1);
    a.row(i)[2] = rng.uniform(-5, 5);
    y[i] = 0.5 - 2.0 * a.row(i)[1] + 0.25 * a.row(i)[2];
  }
  auto c = least_squares(a, y);
  EXPECT_NEAR(c[0], 0.5, 1e-12);
  EXPECT_NEAR(c[1], -2.0, 1e-12);
  EXPECT_NEAR(c[2], 0.25, 1e-12);
}

TEST(StatusScatter, RegressionOnOneDimension) {
  // rep = v, score = 3 - v: the fit is exact.
  auto t = table(5, 1, {0, 1, 2, 3, 4});
  std::vector<double> scores = {3, 2, 1, 0, -1};
  std::vector<NodeIndex> ranking = {0, 1, 2, 3, 4};
  auto rows = status_scatter(t, std::nullopt, scores, ranking);
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(rows[i].position, i + 1);
    EXPECT_NEAR(rows[i].predicted_status, scores[i], 1e-12);
  }
}

TEST(StatusScatter, ParametersFollowRankingOrder) {
  auto t = table(3, 2, {1, 0, 0, 1, 1, 1});
  std::vector<double> w = {2.0, 3.0};
  std::vector<NodeIndex> ranking = {2, 0, 1};
  auto rows = status_scatter(t, std::span<const double>(w), {}, ranking);
  EXPECT_DOUBLE_EQ(rows[0].predicted_status, 5.0);
  EXPECT_DOUBLE_EQ(rows[1].predicted_status, 2.0);
  EXPECT_DOUBLE_EQ(rows[2].predicted_status, 3.0);
}

TEST(StatusScatter, ParameterLengthMismatchThrows) {
  auto t = table(2, 2, {1, 0, 0, 1});
  std::vector<double> w = {1.0};
  std::vector<NodeIndex> ranking = {0, 1};
  EXPECT_THROW(status_scatter(t, std::span<const double>(w), {}, ranking), ArgumentError);
}

TEST(StatusScatter, CsvHasOneRowPerNode) {
  auto t = table(4, 1, {4, 3, 2, 1});
  std::vector<double> scores = {0.4, 0.3, 0.2, 0.1};
  std::vector<NodeIndex> ranking = {0, 1, 2, 3};
  auto rows = status_scatter(t, std::nullopt, scores, ranking);
  std::stringstream out;
  write_scatter_csv(rows, out);
  std::string line;
  std::getline(out, line);
  EXPECT_EQ(line, "position,predicted_status");
  int count = 0;
  while (std::getline(out, line)) ++count;
  EXPECT_EQ(count, 4);
}
