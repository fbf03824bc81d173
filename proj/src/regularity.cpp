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

#include "cutgraphon/regularity.hpp"

#include <bit>
#include <cmath>

#include "cutgraphon/cut_norm.hpp"
#include "cutgraphon/error.hpp"

namespace cutgraphon {
namespace {

constexpr double kSlack = 1e-12;

double energy(const Kernel& k) {
  double l2 = l2_norm(k);
  return l2 * l2;
}

}  // namespace

RegularityResult weak_regularity_approx(const Kernel& w, int q0) {
  if (q0 < 2) throw ValidationError("regularity: q0 must be at least 2");
  if (w.max_abs() > 1.0 + kSlack) {
    throw ValidationError("regularity: kernel values must lie in [-1, 1]");
  }
  if (w.row_weights().sum() > 1.0 + kSlack || w.col_weights().sum() > 1.0 + kSlack) {
    throw ValidationError("regularity: row and column weights must sum to at most 1");
  }
  const int k0 = std::bit_width(static_cast<unsigned>(q0)) - 1;
  const double bound = 1.0 / std::sqrt(static_cast<double>(k0));

  Matrix approx = Matrix::Zero(w.rows(), w.cols());
  Kernel residual = w;
  std::vector<RegularityTerm> terms;
  CutNormResult cut = step_kernel_cut_norm_exact(residual);
  while (static_cast<int>(terms.size()) < k0 && cut.value > 0.0) {
    if (!terms.empty() && cut.value <= bound) break;
    double rows_mass = 0.0;
    double cols_mass = 0.0;
    for (int a : cut.witness_s) rows_mass += w.row_weights()[a];
    for (int b : cut.witness_t) cols_mass += w.col_weights()[b];
    RegularityTerm term;
    term.coefficient = replay_cut(residual, cut.witness_s, cut.witness_t) / (rows_mass * cols_mass);
    term.rows = cut.witness_s;
    term.cols = cut.witness_t;
    term.residual_cut = cut.value;
    term.energy_before = energy(residual);
    Matrix next = residual.values();
    for (int a : term.rows) {
      for (int b : term.cols) {
        next(a, b) -= term.coefficient;
        approx(a, b) += term.coefficient;
      }
    }
    residual = Kernel::create(std::move(next), w.row_weights(), w.col_weights());
    term.energy_after = energy(residual);
    terms.push_back(std::move(term));
    cut = step_kernel_cut_norm_exact(residual);
  }

  RegularityDecomposition dec{std::move(terms), residual, k0, cut.value, bound};
  Kernel approximation = Kernel::create(std::move(approx), w.row_weights(), w.col_weights());
  return RegularityResult{std::move(approximation), std::move(dec)};
}

RegularityResult weak_regularity_approx(const StepGraphon& w, int q0) {
  return weak_regularity_approx(Kernel::from_graphon(w), q0);
}

}  // namespace cutgraphon
