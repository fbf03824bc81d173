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

// Weak regularity: approximates a step kernel by a short sum of cut
// products a_i * 1[S_i x T_i] with a certified cut-norm error.

#ifndef CUTGRAPHON_REGULARITY_HPP_
#define CUTGRAPHON_REGULARITY_HPP_

#include <vector>

#include "cutgraphon/kernel_core.hpp"

namespace cutgraphon {

struct RegularityTerm {
  // Signed; later terms act on signed residuals.
  double coefficient = 0.0;
  std::vector<int> rows;
  std::vector<int> cols;
  // Cut norm and squared l2 norm of the residual this term was fitted to,
  // and the squared l2 norm after subtracting it.
  double residual_cut = 0.0;
  double energy_before = 0.0;
  double energy_after = 0.0;
};

struct RegularityDecomposition {
  std::vector<RegularityTerm> terms;
  Kernel residual;
  // Iteration budget floor(log2(q0)).
  int k0 = 0;
  // Exact cut norm of the final residual.
  double residual_cut = 0.0;
  double bound = 0.0;
};

struct RegularityResult {
  Kernel approximation;
  RegularityDecomposition decomposition;
};

// Requires q0 >= 2, |values| <= 1 and row and column weights each summing
// to at most one. Fits at least one term, stops at the first residual with
// cut norm <= 1/sqrt(k0) and never uses more than k0 terms; under these
// conditions the final residual always meets the bound. Throws BudgetError
// when the exact cut norm of a residual is out of reach.
RegularityResult weak_regularity_approx(const Kernel& w, int q0);
RegularityResult weak_regularity_approx(const StepGraphon& w, int q0);

}  // namespace cutgraphon

#endif  // CUTGRAPHON_REGULARITY_HPP_
