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

#ifndef CUTGRAPHON_RNG_HPP_
#define CUTGRAPHON_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <vector>

namespace cutgraphon {

// Counter-based generator: the i-th output is a pure function of (key, i),
// so streams can be split by key and indexed directly without sharing
// state. Output is the SplitMix64 finalizer applied to key + (i+1)*gamma,
// which is bit-identical on every platform.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : key_(key) {}

  // Independent stream for (seed, tags...). Tags name the stage, replicate,
  // restart, etc.
  static CounterRng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return at(counter_++); }

  // Random access into the stream; does not move the cursor.
  result_type at(std::uint64_t index) const;

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return to_unit(operator()()); }
  double uniform_at(std::uint64_t index) const { return to_unit(at(index)); }

  // Unbiased integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return counter_; }

  static double to_unit(result_type bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

// Fisher-Yates with CounterRng::below, so permutations are reproducible
// across standard library implementations.
void shuffle(std::vector<int>& values, CounterRng& rng);

std::vector<int> random_permutation(int n, CounterRng& rng);

}  // namespace cutgraphon

#endif  // CUTGRAPHON_RNG_HPP_
