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

// Packing families for minimax lower bounds: sign codes, Rademacher block
// matrices, two-block matrix families and perturbed-weight graphon
// families, with their separation and KL metadata.

#ifndef CUTGRAPHON_LOWER_BOUNDS_HPP_
#define CUTGRAPHON_LOWER_BOUNDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cutgraphon/kernel_core.hpp"

namespace cutgraphon {

using SignVector = std::vector<int>;

struct SignCode {
  std::vector<SignVector> words;
  std::size_t target = 0;
  // Smallest pairwise count of differing coordinates (0 with < 2 words).
  int min_distance = 0;
  int max_distance = 0;
  bool reached_target = false;
};

inline constexpr int kDefaultCodeDraws = 20000;

// Balanced +-1 words of length k1 (k1 even, >= 8) whose positive sets
// differ in more than k1/4 places, drawn until ceil(exp(k1/16)) words or
// `max_draws` draws.
SignCode varshamov_gilbert_code(int k1, std::uint64_t seed, int max_draws = kDefaultCodeDraws);

struct RademacherBlockMatrix {
  Matrix b;
  int k1 = 0;
  int mk = 0;
  int tries = 0;
  bool property_i_certified = false;
};

// Redraws an independent +-1 matrix until every pair of rows has inner
// product at most mk/4 in absolute value. Throws BudgetError after
// `max_tries` draws.
RademacherBlockMatrix rademacher_block_matrix(int k1, int mk, std::uint64_t seed,
                                              int max_tries = 100);

struct SpreadCheck {
  int samples = 0;
  // Smallest observed sum divided by eta0 * eta1 * k1 * mk / 8.
  double min_ratio = 0.0;
  bool passed = false;
};

// Samples disjoint row sets X, Y of size k1/16 with orderings, a column set
// Z of at least 7/8 of the columns and a row-stochastic matrix on the
// 1/(8 mk) grid, and checks
//   sum_a sum_{b in Z} |B[x_a][b] - sum_c w[b][c] B[y_a][c]| >= 7 k1 mk / 1024
// on every sample.
SpreadCheck spot_check_spread(const RademacherBlockMatrix& b, int samples, std::uint64_t seed);

struct PackingFamily {
  std::vector<ProbMatrix> matrices;
  std::vector<StepGraphon> graphons;
  std::vector<SignVector> codes;
  double epsilon = 0.0;
  // Certified lower bound on pairwise distances: matrix cut norm for
  // matrix families, motif bound on the cut distance for graphon families.
  double separation_lower = 0.0;
  // k * epsilon / sqrt(mk) for graphon families; unknown constant omitted.
  double separation_theory = 0.0;
  double kl_budget = 0.0;
  bool fano_ready = false;
  int n = 0;
  int k = 0;
  int mk = 0;
  std::size_t target = 0;

  std::size_t size() const { return matrices.empty() ? graphons.size() : matrices.size(); }
};

inline constexpr std::size_t kDefaultMatrixPackingCap = 256;

// Theta_u = rho/2 + u_i u_j eps off the diagonal over sign words u whose
// positive sets differ in between n/4 and 3n/4 places. The word count
// targets min(2^(n/8), cap); eps is the largest value with
// 16 n^2 eps^2 / (3 rho) <= log(size) / 32 and eps < rho/4.
PackingFamily matrix_packing(int n, double rho, std::uint64_t seed,
                             std::size_t cap = kDefaultMatrixPackingCap);

// Same family with a fixed eps (may be zero).
PackingFamily matrix_packing_with_epsilon(int n, double rho, double eps, std::uint64_t seed,
                                          std::size_t cap = kDefaultMatrixPackingCap);

// Graphons with k1 = k/2 small steps of weight 1/(2 k1) + u_a and
// mk = ceil(128 ln k) large steps of weight 1/(2 mk); the small-by-large
// block holds (1 + B)/2 and everything else is 1/2. Requires k a multiple
// of 32 with 64 <= k <= n, or k = 2 for the two-element family built on
// [[1, 1], [1, -1]].
PackingFamily graphon_packing(int k, int n, double rho, std::uint64_t seed);

int large_step_count(int k);

// 32 n k1^2 eps^2 / 3. Requires every |u_a| and |v_a| equal to eps with
// eps <= 1/(8 k1).
double kl_bound(const std::vector<double>& u, const std::vector<double>& v, int n, double eps,
                int k1);

// n times the KL divergence between the two step-label distributions.
double latent_kl_exact(const std::vector<double>& u, const std::vector<double>& v, int k1, int mk,
                       int n);

// key=value lines: size, n, k, epsilon, klBudget, separationLower,
// separationTheory, fanoReady.
void write_packing_metadata(std::ostream& out, const PackingFamily& family);

}  // namespace cutgraphon

#endif  // CUTGRAPHON_LOWER_BOUNDS_HPP_
