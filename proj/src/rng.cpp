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

#include "cutgraphon/rng.hpp"

#include <numeric>

namespace cutgraphon {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

CounterRng CounterRng::stream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t key = mix64(seed + kGamma);
  std::uint64_t salt = 1;
  for (std::uint64_t tag : tags) {
    key = mix64(key ^ mix64(tag + salt * kGamma));
    ++salt;
  }
  return CounterRng(key);
}

CounterRng::result_type CounterRng::at(std::uint64_t index) const {
  return mix64(key_ + (index + 1) * kGamma);
}

std::uint64_t CounterRng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Rejection on the top of the range keeps the result unbiased.
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t draw = operator()();
  while (draw >= limit) draw = operator()();
  return draw % bound;
}

void shuffle(std::vector<int>& values, CounterRng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(values[i - 1], values[j]);
  }
}

std::vector<int> random_permutation(int n, CounterRng& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  shuffle(perm, rng);
  return perm;
}

}  // namespace cutgraphon
