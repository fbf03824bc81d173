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

#include "cutgraphon/cut_distance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include "cutgraphon/error.hpp"
#include "cutgraphon/rng.hpp"

namespace cutgraphon {
namespace {

constexpr int kMaxBlowup = 1024;
// Up to this size the cut objective itself drives the swap search.
constexpr int kExactDescentSteps = 10;
constexpr std::uint64_t kSearchTag = 0x7365617263ULL;
constexpr double kHomomorphismBudget = 1e8;

using Perm = std::vector<int>;

// Lexicographic order on (steps, weights, values), used to fix which
// argument is refined first so both call orders do identical work.
bool canonical_less(const StepGraphon& a, const StepGraphon& b) {
  if (a.steps() != b.steps()) return a.steps() < b.steps();
  const auto& wa = a.weights();
  const auto& wb = b.weights();
  for (Eigen::Index i = 0; i < wa.size(); ++i) {
    if (wa[i] != wb[i]) return wa[i] < wb[i];
  }
  const auto& qa = a.values();
  const auto& qb = b.values();
  for (Eigen::Index i = 0; i < qa.size(); ++i) {
    if (qa.data()[i] != qb.data()[i]) return qa.data()[i] < qb.data()[i];
  }
  return false;
}

Matrix matched_difference(const Matrix& b1, const Matrix& b2, const Perm& p) {
  const int m = static_cast<int>(b1.rows());
  Matrix d(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) d(i, j) = b1(i, j) - b2(p[i], p[j]);
  }
  return d;
}

double evaluate(const Matrix& d, Metric metric, int cut_restarts, std::uint64_t seed,
                int exact_limit, CutMethod* method = nullptr) {
  const double cells = static_cast<double>(d.size());
  switch (metric) {
    case Metric::Cut:
      if (d.rows() <= std::min(exact_limit, kExactCutLimit)) {
        if (method) *method = CutMethod::ExactEnumeration;
        return matrix_cut_norm_exact(d).value;
      }
      if (method) *method = CutMethod::AlternatingHeuristic;
      return matrix_cut_norm_heuristic(d, cut_restarts, seed).value;
    case Metric::L1:
      if (method) *method = CutMethod::ExactEnumeration;
      return d.cwiseAbs().sum() / cells;
    case Metric::L2:
      if (method) *method = CutMethod::ExactEnumeration;
      return std::sqrt(d.squaredNorm() / cells);
  }
  return 0.0;
}

bool is_permutation(const Perm& p, int m) {
  if (static_cast<int>(p.size()) != m) return false;
  std::vector<char> seen(m, 0);
  for (int v : p) {
    if (v < 0 || v >= m || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

enum class Objective { ExactCut, Absolute, Squared };

// Local search over matchings of the steps of `y` to the steps of `x`.
class MatchSearch {
 public:
  MatchSearch(const Matrix& x, const Matrix& y, Objective objective)
      : x_(x), y_(y), objective_(objective), m_(static_cast<int>(x.rows())) {}

  double cost(const Perm& p) const {
    if (objective_ == Objective::ExactCut) {
      return matrix_cut_norm_exact(matched_difference(x_, y_, p)).value;
    }
    double total = 0.0;
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < m_; ++j) total += loss(x_(i, j) - y_(p[i], p[j]));
    }
    return total;
  }

  // First-improvement pairwise swaps until no swap helps.
  double descend(Perm& p) const {
    double current = cost(p);
    const double tol = 1e-12 * std::max(1.0, current);
    for (int pass = 0; pass < 500; ++pass) {
      bool improved = false;
      for (int a = 0; a < m_; ++a) {
        for (int b = a + 1; b < m_; ++b) {
          if (objective_ == Objective::ExactCut) {
            std::swap(p[a], p[b]);
            double c = cost(p);
            if (c < current - tol) {
              current = c;
              improved = true;
            } else {
              std::swap(p[a], p[b]);
            }
          } else {
            double delta = swap_delta(p, a, b);
            if (delta < -tol) {
              std::swap(p[a], p[b]);
              current += delta;
              improved = true;
            }
          }
        }
      }
      if (!improved) break;
    }
    return cost(p);
  }

 private:
  double loss(double v) const { return objective_ == Objective::Absolute ? std::abs(v) : v * v; }

  // Change in cost when p[a] and p[b] trade places.
  double swap_delta(const Perm& p, int a, int b) const {
    const int pa = p[a];
    const int pb = p[b];
    double before = 0.0;
    double after = 0.0;
    for (int j = 0; j < m_; ++j) {
      if (j == a || j == b) continue;
      const int pj = p[j];
      before += loss(x_(a, j) - y_(pa, pj)) + loss(x_(b, j) - y_(pb, pj));
      after += loss(x_(a, j) - y_(pb, pj)) + loss(x_(b, j) - y_(pa, pj));
    }
    // Off-diagonal rows and columns contribute symmetrically.
    before *= 2.0;
    after *= 2.0;
    before += loss(x_(a, a) - y_(pa, pa)) + loss(x_(b, b) - y_(pb, pb)) +
              2.0 * loss(x_(a, b) - y_(pa, pb));
    after += loss(x_(a, a) - y_(pb, pb)) + loss(x_(b, b) - y_(pa, pa)) +
             2.0 * loss(x_(a, b) - y_(pb, pa));
    return after - before;
  }

  const Matrix& x_;
  const Matrix& y_;
  Objective objective_;
  int m_;
};

Perm identity_perm(int m) {
  Perm p(m);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm row_mean_order(const Matrix& b) {
  Perm order = identity_perm(static_cast<int>(b.rows()));
  Vector means = b.rowwise().mean();
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return means[i] < means[j]; });
  return order;
}

// Matches steps of equal row-mean rank.
Perm greedy_matching(const Matrix& x, const Matrix& y) {
  Perm ox = row_mean_order(x);
  Perm oy = row_mean_order(y);
  Perm p(x.rows());
  for (std::size_t r = 0; r < ox.size(); ++r) p[ox[r]] = oy[r];
  return p;
}

struct DirectionResult {
  double value = 0.0;
  Perm perm;
};

// Best matching of y onto x: D = x - y[p, p].
DirectionResult search_direction(const Matrix& x, const Matrix& y, Metric metric,
                                 const DistanceOptions& opt, const Perm& hint,
                                 std::uint64_t direction) {
  const int m = static_cast<int>(x.rows());
  Objective objective = Objective::Squared;
  if (metric == Metric::L1) objective = Objective::Absolute;
  if (metric == Metric::Cut && m <= kExactDescentSteps) objective = Objective::ExactCut;
  MatchSearch search(x, y, objective);

  std::vector<Perm> fixed_starts;
  if (opt.plain_starts || hint.empty()) {
    fixed_starts.push_back(identity_perm(m));
    fixed_starts.push_back(greedy_matching(x, y));
  }
  if (!hint.empty()) fixed_starts.push_back(hint);

  std::vector<Perm> finals;
  Perm best_perm;
  double best_cost = 0.0;
  auto consider = [&](Perm p) {
    double c = search.descend(p);
    if (best_perm.empty() || c < best_cost) {
      best_cost = c;
      best_perm = p;
    }
    return p;
  };
  for (const Perm& start : fixed_starts) finals.push_back(consider(start));
  for (int r = 0; r < opt.restarts; ++r) {
    CounterRng rng = CounterRng::stream(
        opt.seed, {kSearchTag, direction, static_cast<std::uint64_t>(r)});
    consider(random_permutation(m, rng));
  }
  finals.push_back(best_perm);

  // The search objective may be a surrogate; score the finalists on the
  // metric itself.
  std::set<Perm> seen;
  DirectionResult out;
  for (const Perm& p : finals) {
    if (!seen.insert(p).second) continue;
    double v = evaluate(matched_difference(x, y, p), metric, opt.cut_restarts, opt.seed,
                        opt.exact_cut_limit);
    if (out.perm.empty() || v < out.value) {
      out.value = v;
      out.perm = p;
    }
  }
  return out;
}

// Smallest m <= limit with both weight vectors exactly refinable.
int common_refinement(const StepGraphon& w1, const StepGraphon& w2, int limit) {
  const int lo = std::max(w1.steps(), w2.steps());
  for (int m = lo; m <= limit; ++m) {
    if (refines_exactly(w1.weights(), m) && refines_exactly(w2.weights(), m)) return m;
  }
  return 0;
}

double dense_homomorphism(const Motif& f, const StepGraphon& w) {
  const int k = w.steps();
  if (std::pow(static_cast<double>(k), f.vertices) > kHomomorphismBudget) {
    throw BudgetError("homomorphism density: " + std::to_string(k) + "^" +
                      std::to_string(f.vertices) + " maps exceed the budget");
  }
  // Edges grouped by their later endpoint, so each factor is applied as soon
  // as both ends are placed.
  std::vector<std::vector<int>> back(f.vertices);
  for (auto [u, v] : f.edges) back[std::max(u, v)].push_back(std::min(u, v));
  std::vector<int> map(f.vertices);
  const Matrix& q = w.values();
  const Vector& lam = w.weights();
  std::function<double(int)> rec = [&](int depth) -> double {
    if (depth == f.vertices) return 1.0;
    double total = 0.0;
    for (int s = 0; s < k; ++s) {
      double factor = lam[s];
      for (int u : back[depth]) factor *= q(map[u], s);
      if (factor == 0.0) continue;
      map[depth] = s;
      total += factor * rec(depth + 1);
    }
    return total;
  };
  return rec(0);
}

}  // namespace

const char* to_string(Metric metric) {
  switch (metric) {
    case Metric::Cut:
      return "cut";
    case Metric::L1:
      return "l1";
    case Metric::L2:
      return "l2";
  }
  return "unknown";
}

Metric parse_metric(const std::string& name) {
  if (name == "cut") return Metric::Cut;
  if (name == "l1") return Metric::L1;
  if (name == "l2") return Metric::L2;
  throw ValidationError("unknown metric '" + name + "'");
}

Motif Motif::create(int vertices, std::vector<std::pair<int, int>> edges, std::string name) {
  if (vertices < 1) throw ValidationError("motif: needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertices || v >= vertices) {
      throw ValidationError("motif: edge endpoint out of range");
    }
    if (u == v) throw ValidationError("motif: self-loop");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      throw ValidationError("motif: repeated edge");
    }
  }
  Motif m;
  m.vertices = vertices;
  m.edges = std::move(edges);
  m.name = std::move(name);
  return m;
}

Motif Motif::edge() {
  Motif m = create(2, {{0, 1}}, "edge");
  m.shape = Shape::Edge;
  return m;
}

Motif Motif::cherry() {
  Motif m = create(3, {{0, 1}, {0, 2}}, "cherry");
  m.shape = Shape::Cherry;
  return m;
}

Motif Motif::triangle() {
  Motif m = create(3, {{0, 1}, {1, 2}, {0, 2}}, "triangle");
  m.shape = Shape::Triangle;
  return m;
}

Motif Motif::four_cycle() {
  Motif m = create(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, "four_cycle");
  m.shape = Shape::FourCycle;
  return m;
}

std::vector<Motif> standard_motifs() {
  return {Motif::edge(), Motif::cherry(), Motif::triangle(), Motif::four_cycle()};
}

bool refines_exactly(const Vector& weights, int m) {
  for (Eigen::Index a = 0; a < weights.size(); ++a) {
    double pieces = weights[a] * m;
    if (std::abs(pieces - std::round(pieces)) > 1e-9 || std::round(pieces) < 1.0) return false;
  }
  return true;
}

int default_blowup(const StepGraphon& w1, const StepGraphon& w2) {
  const int lo = std::max(w1.steps(), w2.steps());
  const int hi = std::max(64, lo);
  int m = common_refinement(w1, w2, hi);
  return m > 0 ? m : hi;
}

std::vector<int> invert_permutation(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
  return inv;
}

double matched_distance(const StepGraphon& w1, const StepGraphon& w2, Metric metric, int m,
                        const std::vector<int>& permutation, int cut_restarts,
                        std::uint64_t seed, int exact_cut_limit) {
  if (!is_permutation(permutation, m)) {
    throw ValidationError("matched_distance: witness is not a permutation of the refinement");
  }
  // Evaluate in canonical orientation so both argument orders agree.
  if (canonical_less(w2, w1)) {
    return matched_distance(w2, w1, metric, m, invert_permutation(permutation), cut_restarts,
                            seed, exact_cut_limit);
  }
  Matrix d = matched_difference(blowup(w1, m).values(), blowup(w2, m).values(), permutation);
  return evaluate(d, metric, cut_restarts, seed, exact_cut_limit);
}

DistanceEstimate delta_upper(const StepGraphon& w1, const StepGraphon& w2, Metric metric,
                             const DistanceOptions& options) {
  if (options.restarts < 0) throw ValidationError("delta_upper: restarts must be non-negative");
  const int m = options.blowup > 0 ? options.blowup : default_blowup(w1, w2);
  if (m < std::max(w1.steps(), w2.steps())) {
    throw ValidationError("delta_upper: blow-up smaller than the step count");
  }
  if (m > kMaxBlowup) {
    throw BudgetError("delta_upper: blow-up of " + std::to_string(m) + " exceeds " +
                      std::to_string(kMaxBlowup));
  }
  if (!options.hint.empty() && !is_permutation(options.hint, m)) {
    throw ValidationError("delta_upper: hint is not a permutation of the refinement");
  }

  const bool flipped = canonical_less(w2, w1);
  const StepGraphon& a = flipped ? w2 : w1;
  const StepGraphon& b = flipped ? w1 : w2;
  Perm hint = options.hint;
  if (flipped && !hint.empty()) hint = invert_permutation(hint);

  const Matrix ba = blowup(a, m).values();
  const Matrix bb = blowup(b, m).values();
  DirectionResult forward = search_direction(ba, bb, metric, options, hint, 0);
  DirectionResult backward = search_direction(
      bb, ba, metric, options, hint.empty() ? hint : invert_permutation(hint), 1);

  // Re-score the backward witness in the forward orientation so the
  // reported value is what matched_distance replays.
  Perm back_as_forward = invert_permutation(backward.perm);
  CutMethod method = CutMethod::ExactEnumeration;
  double back_value = evaluate(matched_difference(ba, bb, back_as_forward), metric,
                               options.cut_restarts, options.seed, options.exact_cut_limit, &method);
  double fwd_value = evaluate(matched_difference(ba, bb, forward.perm), metric,
                              options.cut_restarts, options.seed, options.exact_cut_limit, &method);
  Perm best = fwd_value <= back_value ? forward.perm : back_as_forward;

  DistanceEstimate est;
  est.metric = metric;
  est.blowup = m;
  est.upper = std::min(fwd_value, back_value);
  est.witness_permutation = flipped ? invert_permutation(best) : best;
  est.exact_refinement = refines_exactly(w1.weights(), m) && refines_exactly(w2.weights(), m);
  est.evaluation = method;

  std::vector<Motif> motifs = standard_motifs();
  double lower = 0.0;
  std::size_t which = 0;
  for (std::size_t i = 0; i < motifs.size(); ++i) {
    double v = delta_cut_lower(w1, w2, {motifs[i]});
    if (v > lower) {
      lower = v;
      which = i;
    }
  }
  est.lower = lower;
  est.witness_motifs = {motifs[which]};
  return est;
}

double delta_exact_tiny(const StepGraphon& w1, const StepGraphon& w2, Metric metric, int m) {
  if (m == 0) {
    m = common_refinement(w1, w2, kExactDistanceSteps);
  } else if (m < std::max(w1.steps(), w2.steps()) || m > kExactDistanceSteps ||
             !refines_exactly(w1.weights(), m) || !refines_exactly(w2.weights(), m)) {
    m = 0;
  }
  if (m == 0) {
    throw ValidationError("delta_exact_tiny: weights do not split into at most " +
                          std::to_string(kExactDistanceSteps) + " equal steps");
  }
  const Matrix b1 = blowup(w1, m).values();
  const Matrix b2 = blowup(w2, m).values();
  Perm p = identity_perm(m);
  double best = evaluate(matched_difference(b1, b2, p), metric, 1, 0, kExactCutLimit);
  while (std::next_permutation(p.begin(), p.end())) {
    best = std::min(best, evaluate(matched_difference(b1, b2, p), metric, 1, 0, kExactCutLimit));
  }
  return best;
}

double homomorphism_density(const Motif& motif, const StepGraphon& w) {
  const Matrix& q = w.values();
  const Vector& lam = w.weights();
  switch (motif.shape) {
    case Motif::Shape::Edge:
      return lam.dot(q * lam);
    case Motif::Shape::Cherry: {
      Vector degree = q * lam;
      return lam.dot(degree.cwiseAbs2());
    }
    case Motif::Shape::Triangle: {
      Matrix p = q * lam.asDiagonal();
      return (p * p).cwiseProduct(p.transpose()).sum();
    }
    case Motif::Shape::FourCycle: {
      Matrix p = q * lam.asDiagonal();
      Matrix p2 = p * p;
      return p2.cwiseProduct(p2.transpose()).sum();
    }
    case Motif::Shape::Custom:
      break;
  }
  return dense_homomorphism(motif, w);
}

double delta_cut_lower(const StepGraphon& w1, const StepGraphon& w2,
                       const std::vector<Motif>& motifs) {
  double best = 0.0;
  for (const Motif& f : motifs) {
    if (f.edge_count() == 0) continue;
    double gap = std::abs(homomorphism_density(f, w1) - homomorphism_density(f, w2));
    best = std::max(best, gap / (4.0 * f.edge_count()));
  }
  return best;
}

}  // namespace cutgraphon
