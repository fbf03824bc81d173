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

// Estimators of the connection-probability matrix from one adjacency
// matrix, each liftable to a step graphon.

#ifndef CUTGRAPHON_ESTIMATORS_HPP_
#define CUTGRAPHON_ESTIMATORS_HPP_

#include <cstdint>
#include <vector>

#include "cutgraphon/kernel_core.hpp"

namespace cutgraphon {

ProbMatrix estimate_adjacency(const AdjacencyMatrix& a);

struct MeanEstimate {
  ProbMatrix estimate;
  // Edge density sum(A) / (n (n - 1)), reused as a sparsity estimate.
  double density = 0.0;
};

MeanEstimate estimate_mean(const AdjacencyMatrix& a);

inline constexpr double kDefaultSvtMultiplier = 2.1;

// Threshold = multiplier * sqrt(density * n).
struct SvtConfig {
  double multiplier = kDefaultSvtMultiplier;
  double density = 0.0;
  double threshold = 0.0;

  // Validates multiplier > 0 and density in (0, 1].
  static SvtConfig make(double multiplier, double density, int n);
  // Uses the observed edge density; an empty graph gets the smallest
  // positive density 1 / (n (n - 1)).
  static SvtConfig from_graph(const AdjacencyMatrix& a,
                              double multiplier = kDefaultSvtMultiplier);
  // Fixed threshold, including zero.
  static SvtConfig with_threshold(double threshold);
};

struct SvtResult {
  ProbMatrix estimate;
  // Reconstruction before clipping and zeroing the diagonal.
  Matrix raw;
  int rank = 0;
};

// Keeps eigenpairs of A with |eigenvalue| >= threshold, then clips to
// [0, 1] and zeroes the diagonal.
SvtResult estimate_svt(const AdjacencyMatrix& a, const SvtConfig& config);

struct BlockFit {
  int k = 0;
  std::vector<int> labels;
  Matrix q;
  double objective = 0.0;
};

// sum_{i != j} (A_ij - Q[z_i][z_j])^2.
double block_objective(const Matrix& a, const std::vector<int>& labels, const Matrix& q);

// Block means over pairs i != j clipped to [0, rho]; empty blocks get 0.
Matrix block_means(const Matrix& a, const std::vector<int>& labels, int k, double rho);

// Alternating minimization from `restarts` random labelings (at least one).
// Each sweep moves every node to its best label in turn against the block
// means of the previous sweep, then refreshes the means.
BlockFit estimate_restricted_ls(const AdjacencyMatrix& a, int k, double rho, int restarts,
                                std::uint64_t seed);

inline constexpr double kExactLabelingBudget = 2e6;

// Global minimizer over all k^n labelings.
BlockFit exact_restricted_ls(const AdjacencyMatrix& a, int k, double rho);

// Theta[i][j] = Q[z_i][z_j] off the diagonal.
ProbMatrix block_matrix(const BlockFit& fit);

StepGraphon lift_to_graphon(const ProbMatrix& estimate);

}  // namespace cutgraphon

#endif  // CUTGRAPHON_ESTIMATORS_HPP_
