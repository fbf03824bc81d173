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

#include "cutgraphon/samplers.hpp"

#include <cmath>

#include "cutgraphon/error.hpp"
#include "cutgraphon/rng.hpp"

namespace cutgraphon {
namespace {

constexpr std::uint64_t kLatentTag = 0x6c6174656e74ULL;
constexpr std::uint64_t kEdgeTag = 0x65646765ULL;

Matrix theta_values(const ModelSpec& spec, const LatentSample& xi, bool clip) {
  const int n = xi.size();
  std::vector<int> step = assign_steps(spec.w0, xi);
  const Matrix& q = spec.w0.values();
  Matrix theta = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double v = spec.rho * q(step[i], step[j]);
      if (clip) v = std::min(v, 1.0);
      theta(i, j) = v;
      theta(j, i) = v;
    }
  }
  return theta;
}

}  // namespace

ModelSpec make_model_spec(StepGraphon w0, double rho, int n, std::uint64_t seed) {
  if (!(rho > 0.0 && rho <= 1.0)) throw ValidationError("model: rho must lie in (0, 1]");
  if (n < 1) throw ValidationError("model: n must be positive");
  return ModelSpec{std::move(w0), rho, n, seed};
}

ModelSpec sbm_spec(const Matrix& q, const Vector& pi, double rho, int n, std::uint64_t seed) {
  return make_model_spec(StepGraphon::create(q, pi), rho, n, seed);
}

LatentSample sample_latents(int n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("sample_latents: n must be positive");
  CounterRng rng = CounterRng::stream(seed, {kLatentTag});
  LatentSample out;
  out.seed = seed;
  out.xi.resize(n);
  for (int i = 0; i < n; ++i) out.xi[i] = rng.uniform_at(static_cast<std::uint64_t>(i));
  return out;
}

std::vector<int> assign_steps(const StepGraphon& w, const LatentSample& xi) {
  std::vector<int> step(xi.size());
  for (int i = 0; i < xi.size(); ++i) {
    if (!(xi.xi[i] >= 0.0 && xi.xi[i] <= 1.0)) {
      throw ValidationError("latent position outside [0, 1]");
    }
    step[i] = w.step_of(xi.xi[i]);
  }
  return step;
}

ProbMatrix sample_theta(const ModelSpec& spec, const LatentSample& xi) {
  if (spec.rho * spec.w0.max_value() > 1.0) {
    throw ValidationError("sample_theta: rho * max(W0) exceeds 1; use the clipped sampler");
  }
  return ProbMatrix::from(theta_values(spec, xi, false));
}

ProbMatrix sample_theta_clipped(const ModelSpec& spec, const LatentSample& xi) {
  return ProbMatrix::from(theta_values(spec, xi, true));
}

AdjacencyMatrix sample_adjacency(const ProbMatrix& theta, std::uint64_t seed) {
  const int n = theta.size();
  CounterRng rng = CounterRng::stream(seed, {kEdgeTag});
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto index = static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n) + j;
      if (rng.uniform_at(index) < theta(i, j)) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
      }
    }
  }
  return AdjacencyMatrix::from(std::move(a));
}

}  // namespace cutgraphon
