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

// Cut norms of matrices and weighted step kernels, with replayable
// certificates.
//
// Matrix norms are normalized by the number of entries:
//   |B|_cut = max_{S,T} |sum_{i in S, j in T} B_ij| / (rows * cols).
// Kernel norms are weighted integrals:
//   |K|_cut = max_{S,T} |sum_{a in S, b in T} r_a c_b K_ab|.
// Converting between the two is the caller's job.

#ifndef CUTGRAPHON_CUT_NORM_HPP_
#define CUTGRAPHON_CUT_NORM_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "cutgraphon/kernel_core.hpp"

namespace cutgraphon {

enum class CutMethod { ExactEnumeration, AlternatingHeuristic, QSubsetBound };

const char* to_string(CutMethod method);

struct CutNormResult {
  double value = 0.0;
  // Row and column index sets realizing `value` (sorted, 0-based). For the
  // q-subset bound they are the derived sets of the best subset pair.
  std::vector<int> witness_s;
  std::vector<int> witness_t;
  CutMethod method = CutMethod::ExactEnumeration;
  bool is_upper_bound = false;
};

// Largest side the exact solvers accept; they enumerate 2^side subsets.
inline constexpr int kExactCutLimit = 24;
// Largest side for which the infinity-to-one norm is enumerated exactly.
inline constexpr int kExactInf1Limit = 12;

// Signed submatrix sum over (S, T), normalized like the matrix norm.
double replay_cut(const Matrix& b, const std::vector<int>& s, const std::vector<int>& t);
// Signed weighted sum over (S, T).
double replay_cut(const Kernel& k, const std::vector<int>& s, const std::vector<int>& t);

// Exact by enumerating the smaller side; the other side is chosen by the
// sign of its partial sums. Throws BudgetError when both sides exceed
// kExactCutLimit.
CutNormResult matrix_cut_norm_exact(const Matrix& b);
CutNormResult step_kernel_cut_norm_exact(const Kernel& k);

// Alternating maximization over 0/1 vectors on B and -B. The value is
// always achieved by the returned witness, so it never exceeds the true
// norm. Restart 0 starts from all columns; the rest start from random
// column sets drawn from (seed, restart).
CutNormResult matrix_cut_norm_heuristic(const Matrix& b, int restarts, std::uint64_t seed);

// |B|_{inf->1} / (rows * cols) = max over sign vectors f, g of f^T B g,
// normalized. Exact when the column count is at most kExactInf1Limit,
// otherwise a lower bound from alternating sign updates. The witness holds
// the +1 coordinates of f and g.
CutNormResult inf1_norm(const Matrix& b, int restarts, std::uint64_t seed);

// (|B|_cut, |B|_{inf->1} / n^2), both exact. Throws std::logic_error if the
// two are not within a factor four of each other.
std::pair<double, double> cut_norm_sandwich_check(const Matrix& b);

// Upper bound on |K|_cut from subsets of at most q steps per side. K must
// satisfy |K_ab| <= 1. Throws BudgetError when the subset enumeration is
// too large.
CutNormResult q_subset_upper_bound(const Kernel& k, int q);

// |K|_1 / (4 sqrt(2 * cols)), a lower bound on |K|_cut.
double khintchine_lower_bound(const Kernel& k);

}  // namespace cutgraphon

#endif  // CUTGRAPHON_CUT_NORM_HPP_
