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

// Seeded generators for W-random graphs and stochastic block models.

#ifndef CUTGRAPHON_SAMPLERS_HPP_
#define CUTGRAPHON_SAMPLERS_HPP_

#include <cstdint>
#include <vector>

#include "cutgraphon/kernel_core.hpp"

namespace cutgraphon {

// Edge probabilities are rho * W0(xi_i, xi_j), optionally capped at 1.
struct ModelSpec {
  StepGraphon w0;
  double rho = 1.0;
  int n = 0;
  std::uint64_t seed = 0;
};

// Checks rho in (0, 1] and n >= 1.
ModelSpec make_model_spec(StepGraphon w0, double rho, int n, std::uint64_t seed);

// Block model with class probabilities `pi` and connection matrix `q`.
ModelSpec sbm_spec(const Matrix& q, const Vector& pi, double rho, int n, std::uint64_t seed);

LatentSample sample_latents(int n, std::uint64_t seed);

// Step of each latent position.
std::vector<int> assign_steps(const StepGraphon& w, const LatentSample& xi);

// Requires a graphon with rho * max(Q) <= 1; throws ValidationError
// otherwise.
ProbMatrix sample_theta(const ModelSpec& spec, const LatentSample& xi);
// min(rho * W0, 1); accepts unbounded graphons.
ProbMatrix sample_theta_clipped(const ModelSpec& spec, const LatentSample& xi);

// Independent Bernoulli(theta_ij) edges. Pair (i, j), i < j, always reads
// counter i * n + j of the stream, so the result depends only on
// (theta, seed).
AdjacencyMatrix sample_adjacency(const ProbMatrix& theta, std::uint64_t seed);

}  // namespace cutgraphon

#endif  // CUTGRAPHON_SAMPLERS_HPP_
