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

// Distances between step graphons up to relabeling. Upper bounds come from
// refining both graphons to m equal steps and searching permutations of the
// steps; lower bounds come from homomorphism densities of small motifs.

#ifndef CUTGRAPHON_CUT_DISTANCE_HPP_
#define CUTGRAPHON_CUT_DISTANCE_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cutgraphon/cut_norm.hpp"
#include "cutgraphon/kernel_core.hpp"

namespace cutgraphon {

enum class Metric { Cut, L1, L2 };

const char* to_string(Metric metric);
Metric parse_metric(const std::string& name);

// Simple graph on `vertices` vertices.
struct Motif {
  enum class Shape { Custom, Edge, Cherry, Triangle, FourCycle };

  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  Shape shape = Shape::Custom;
  std::string name;

  // Rejects self-loops, repeated edges and out-of-range endpoints.
  static Motif create(int vertices, std::vector<std::pair<int, int>> edges,
                      std::string name = "custom");
  static Motif edge();
  static Motif cherry();
  static Motif triangle();
  static Motif four_cycle();

  int edge_count() const { return static_cast<int>(edges.size()); }
};

// Edge, cherry, triangle and four-cycle.
std::vector<Motif> standard_motifs();

// Largest refinement whose cut norm is enumerated exactly by default.
inline constexpr int kDefaultDistanceExactCut = 16;

struct DistanceOptions {
  // Refinement size; 0 picks default_blowup().
  int blowup = 0;
  int restarts = 32;
  std::uint64_t seed = 0;
  // Optional starting permutation for the (w1, w2) direction: step i of
  // the refined w1 is matched with step hint[i] of the refined w2.
  std::vector<int> hint;
  // Also start from the identity and from matching steps by row-mean rank.
  bool plain_starts = true;
  // Cut norms of m x m differences are exact up to this m (at most
  // kExactCutLimit), heuristic above it.
  int exact_cut_limit = kDefaultDistanceExactCut;
  // Restarts for the heuristic cut norm.
  int cut_restarts = 16;
};

struct DistanceEstimate {
  Metric metric = Metric::Cut;
  double upper = 0.0;
  double lower = 0.0;
  int blowup = 0;
  // Step i of the refined w1 is matched with step permutation[i] of the
  // refined w2.
  std::vector<int> witness_permutation;
  std::vector<Motif> witness_motifs;
  // False when a weight could not be split exactly into m equal pieces.
  bool exact_refinement = true;
  // How the norm of the matched difference was evaluated. With the
  // heuristic the reported upper value is a lower bound on the norm of that
  // particular difference.
  CutMethod evaluation = CutMethod::ExactEnumeration;
};

// Smallest m in [max(k1, k2), max(64, k1, k2)] at which both weight vectors
// split exactly into equal pieces, or the top of that range if none does.
int default_blowup(const StepGraphon& w1, const StepGraphon& w2);

// True when every m * w_a is an integer (to 1e-9).
bool refines_exactly(const Vector& weights, int m);

// Norm of refine(w1, m) - refine(w2, m) matched by `permutation`.
double matched_distance(const StepGraphon& w1, const StepGraphon& w2, Metric metric, int m,
                        const std::vector<int>& permutation, int cut_restarts = 16,
                        std::uint64_t seed = 0,
                        int exact_cut_limit = kDefaultDistanceExactCut);

// Searches both directions and keeps the smaller value, so swapping the
// arguments gives the same value with the inverse witness.
DistanceEstimate delta_upper(const StepGraphon& w1, const StepGraphon& w2, Metric metric,
                             const DistanceOptions& options = {});

// Minimum over all permutations of the m-step equal refinements; m = 0
// takes the smallest common refinement. Finer refinements can only lower
// the value. Throws ValidationError unless both graphons refine exactly
// into m <= kExactDistanceSteps equal steps.
inline constexpr int kExactDistanceSteps = 8;
double delta_exact_tiny(const StepGraphon& w1, const StepGraphon& w2, Metric metric, int m = 0);

// t(F, W). Throws BudgetError when a general motif needs more than 1e8
// partial maps.
double homomorphism_density(const Motif& motif, const StepGraphon& w);

// max over motifs of |t(F, w1) - t(F, w2)| / (4 e(F)).
double delta_cut_lower(const StepGraphon& w1, const StepGraphon& w2,
                       const std::vector<Motif>& motifs);

std::vector<int> invert_permutation(const std::vector<int>& permutation);

}  // namespace cutgraphon

#endif  // CUTGRAPHON_CUT_DISTANCE_HPP_
