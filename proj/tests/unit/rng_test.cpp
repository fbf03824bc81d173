// Copyright 2026 The cutgraphon Authors.
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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "cutgraphon/rng.hpp"

namespace cg = cutgraphon;

TEST(CounterRng, SameStreamSameValues) {
  auto a = cg::CounterRng::stream(42, {1, 2, 3});
  auto b = cg::CounterRng::stream(42, {1, 2, 3});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
  EXPECT_EQ(a.at(7), b.at(7));
}

TEST(CounterRng, TagsAndSeedsSeparateStreams) {
  auto base = cg::CounterRng::stream(42, {1, 2});
  EXPECT_NE(base.key(), cg::CounterRng::stream(42, {2, 1}).key());
  EXPECT_NE(base.key(), cg::CounterRng::stream(43, {1, 2}).key());
  EXPECT_NE(base.key(), cg::CounterRng::stream(42, {1, 2, 0}).key());
}

TEST(CounterRng, RandomAccessMatchesSequential) {
  auto a = cg::CounterRng::stream(5, {9});
  const auto third = a.at(2);
  a();
  a();
  EXPECT_EQ(a(), third);
  EXPECT_EQ(a.position(), 3u);
}

TEST(CounterRng, UniformMomentsAndRange) {
  auto a = cg::CounterRng::stream(1, {});
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = a.uniform_at(i);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // 3 sigma of the mean of n uniforms.
  EXPECT_NEAR(sum / n, 0.5, 3.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(CounterRng, BelowCoversRange) {
  auto a = cg::CounterRng::stream(2, {});
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    auto v = a.below(7);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
}

TEST(Permutation, IsPermutationAndReproducible) {
  auto a = cg::CounterRng::stream(3, {4});
  auto b = cg::CounterRng::stream(3, {4});
  auto p = cg::random_permutation(50, a);
  EXPECT_EQ(p, cg::random_permutation(50, b));
  std::vector<int> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> ids(50);
  std::iota(ids.begin(), ids.end(), 0);
  EXPECT_EQ(sorted, ids);
  EXPECT_NE(p, ids);
}
