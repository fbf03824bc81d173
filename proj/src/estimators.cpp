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

#include "cutgraphon/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "cutgraphon/error.hpp"
#include "cutgraphon/rng.hpp"

namespace cutgraphon {
namespace {

constexpr std::uint64_t kLabelTag = 0x6c6162656cULL;
constexpr int kMaxSweeps = 200;

Matrix one_hot(const std::vector<int>& labels, int k) {
  Matrix z = Matrix::Zero(static_cast<Eigen::Index>(labels.size()), k);
  for (std::size_t i = 0; i < labels.size(); ++i) z(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
  return z;
}

void check_block_args(const AdjacencyMatrix& a, int k, double rho) {
  if (k < 1 || k > a.size()) throw ValidationError("restricted LS: need 1 <= k <= n");
  if (!(rho > 0.0 && rho <= 1.0)) throw ValidationError("restricted LS: rho must lie in (0, 1]");
}

BlockFit make_fit(const Matrix& a, std::vector<int> labels, int k, double rho) {
  BlockFit fit;
  fit.k = k;
  fit.q = block_means(a, labels, k, rho);
  fit.objective = block_objective(a, labels, fit.q);
  fit.labels = std::move(labels);
  return fit;
}

// One alternating run from `labels`.
BlockFit alternate(const Matrix& a, std::vector<int> labels, int k, double rho) {
  const int n = static_cast<int>(a.rows());
  Matrix q = block_means(a, labels, k, rho);
  // neighbor_mass(i, b) = sum of A_ij over j with label b.
  Matrix neighbor_mass = a * one_hot(labels, k);
  std::vector<int> sizes(k, 0);
  for (int z : labels) ++sizes[z];
  Vector cost(k);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      const int old = labels[i];
      for (int c = 0; c < k; ++c) {
        double v = 0.0;
        for (int b = 0; b < k; ++b) {
          double others = sizes[b] - (b == old ? 1 : 0);
          v += q(c, b) * (q(c, b) * others - 2.0 * neighbor_mass(i, b));
        }
        cost[c] = v;
      }
      int best = old;
      for (int c = 0; c < k; ++c) {
        if (cost[c] < cost[best] - 1e-12) best = c;
      }
      if (best == old) continue;
      changed = true;
      labels[i] = best;
      --sizes[old];
      ++sizes[best];
      for (int j = 0; j < n; ++j) {
        double w = a(j, i);
        if (w == 0.0) continue;
        neighbor_mass(j, old) -= w;
        neighbor_mass(j, best) += w;
      }
    }
    q = block_means(a, labels, k, rho);
    if (!changed) break;
  }
  return make_fit(a, std::move(labels), k, rho);
}

}  // namespace

ProbMatrix estimate_adjacency(const AdjacencyMatrix& a) { return ProbMatrix::from(a.values()); }

MeanEstimate estimate_mean(const AdjacencyMatrix& a) {
  const int n = a.size();
  if (n < 2) throw ValidationError("estimate_mean: need at least two nodes");
  const double density = a.values().sum() / (static_cast<double>(n) * (n - 1));
  Matrix m = Matrix::Constant(n, n, density);
  m.diagonal().setZero();
  return MeanEstimate{ProbMatrix::from(std::move(m)), density};
}

SvtConfig SvtConfig::make(double multiplier, double density, int n) {
  if (!(multiplier > 0.0)) throw ValidationError("svt: multiplier must be positive");
  if (!(density > 0.0 && density <= 1.0)) throw ValidationError("svt: density must lie in (0, 1]");
  if (n < 1) throw ValidationError("svt: n must be positive");
  return SvtConfig{multiplier, density, multiplier * std::sqrt(density * n)};
}

SvtConfig SvtConfig::from_graph(const AdjacencyMatrix& a, double multiplier) {
  const int n = a.size();
  double density = estimate_mean(a).density;
  if (density <= 0.0) density = 1.0 / (static_cast<double>(n) * (n - 1));
  return make(multiplier, density, n);
}

SvtConfig SvtConfig::with_threshold(double threshold) {
  if (!(threshold >= 0.0) || !std::isfinite(threshold)) {
    throw ValidationError("svt: threshold must be finite and non-negative");
  }
  return SvtConfig{0.0, 0.0, threshold};
}

SvtResult estimate_svt(const AdjacencyMatrix& a, const SvtConfig& config) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a.values());
  if (eig.info() != Eigen::Success) throw std::runtime_error("svt: eigensolver did not converge");
  const Vector& values = eig.eigenvalues();
  const Matrix& vectors = eig.eigenvectors();
  const int n = a.size();
  Matrix raw = Matrix::Zero(n, n);
  int rank = 0;
  for (int j = 0; j < n; ++j) {
    if (std::abs(values[j]) < config.threshold) continue;
    raw.noalias() += values[j] * vectors.col(j) * vectors.col(j).transpose();
    ++rank;
  }
  raw = 0.5 * (raw + raw.transpose()).eval();
  Matrix clipped = raw.cwiseMax(0.0).cwiseMin(1.0);
  clipped.diagonal().setZero();
  return SvtResult{ProbMatrix::from(std::move(clipped)), std::move(raw), rank};
}

double block_objective(const Matrix& a, const std::vector<int>& labels, const Matrix& q) {
  const int n = static_cast<int>(a.rows());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double r = a(i, j) - q(labels[i], labels[j]);
      total += r * r;
    }
  }
  return total;
}

Matrix block_means(const Matrix& a, const std::vector<int>& labels, int k, double rho) {
  Matrix z = one_hot(labels, k);
  Matrix a_off = a;
  a_off.diagonal().setZero();
  Matrix sums = z.transpose() * a_off * z;
  Vector sizes = z.colwise().sum().transpose();
  Matrix q = Matrix::Zero(k, k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      double pairs = sizes[r] * (sizes[c] - (r == c ? 1.0 : 0.0));
      if (pairs > 0.0) q(r, c) = std::clamp(sums(r, c) / pairs, 0.0, rho);
    }
  }
  return q;
}

BlockFit estimate_restricted_ls(const AdjacencyMatrix& a, int k, double rho, int restarts,
                                std::uint64_t seed) {
  check_block_args(a, k, rho);
  if (restarts < 1) throw ValidationError("restricted LS: restarts must be at least 1");
  const int n = a.size();
  BlockFit best;
  for (int r = 0; r < restarts; ++r) {
    std::vector<int> labels(n);
    if (r == 0) {
      // Contiguous balanced blocks; with k = n these are singletons.
      for (int i = 0; i < n; ++i) labels[i] = static_cast<int>(static_cast<long>(i) * k / n);
    } else {
      CounterRng rng = CounterRng::stream(seed, {kLabelTag, static_cast<std::uint64_t>(r)});
      for (int i = 0; i < n; ++i) labels[i] = static_cast<int>(rng.below(k));
    }
    BlockFit fit = alternate(a.values(), std::move(labels), k, rho);
    if (best.labels.empty() || fit.objective < best.objective) best = std::move(fit);
  }
  return best;
}

BlockFit exact_restricted_ls(const AdjacencyMatrix& a, int k, double rho) {
  check_block_args(a, k, rho);
  const int n = a.size();
  if (std::pow(static_cast<double>(k), n) > kExactLabelingBudget) {
    throw BudgetError("exact restricted LS: k^n labelings exceed the budget of 2e6");
  }
  std::vector<int> labels(n, 0);
  BlockFit best = make_fit(a.values(), labels, k, rho);
  while (true) {
    int i = 0;
    while (i < n && labels[i] == k - 1) labels[i++] = 0;
    if (i == n) break;
    ++labels[i];
    BlockFit fit = make_fit(a.values(), labels, k, rho);
    if (fit.objective < best.objective) best = std::move(fit);
  }
  return best;
}

ProbMatrix block_matrix(const BlockFit& fit) {
  const int n = static_cast<int>(fit.labels.size());
  Matrix theta(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) theta(i, j) = i == j ? 0.0 : fit.q(fit.labels[i], fit.labels[j]);
  }
  return ProbMatrix::from(std::move(theta));
}

StepGraphon lift_to_graphon(const ProbMatrix& estimate) { return empirical_graphon(estimate); }

}  // namespace cutgraphon
