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

// Core value types: probability and adjacency matrices, step graphons and
// general step kernels, plus the elementary norms and constructions built
// on them. Everything here is immutable after construction.

#ifndef CUTGRAPHON_KERNEL_CORE_HPP_
#define CUTGRAPHON_KERNEL_CORE_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cutgraphon {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Weight sums within this distance of one are accepted as is.
inline constexpr double kWeightTolerance = 1e-12;
// Weight sums within this distance of one are renormalized; further away
// they are rejected.
inline constexpr double kWeightRenormalizeTolerance = 1e-9;

// n x n symmetric matrix with entries in [0, 1] and a zero diagonal.
class ProbMatrix {
 public:
  // Throws ValidationError unless `values` is square, symmetric (to 1e-12,
  // then symmetrized exactly), zero on the diagonal and within [0, 1].
  static ProbMatrix from(Matrix values);

  int size() const { return static_cast<int>(values_.rows()); }
  const Matrix& values() const { return values_; }
  double operator()(int i, int j) const { return values_(i, j); }

 private:
  explicit ProbMatrix(Matrix values) : values_(std::move(values)) {}
  Matrix values_;
};

// n x n symmetric 0/1 matrix with a zero diagonal.
class AdjacencyMatrix {
 public:
  static AdjacencyMatrix from(Matrix values);

  int size() const { return static_cast<int>(values_.rows()); }
  const Matrix& values() const { return values_; }
  double operator()(int i, int j) const { return values_(i, j); }
  // Number of undirected edges.
  std::int64_t edge_count() const;

 private:
  explicit AdjacencyMatrix(Matrix values) : values_(std::move(values)) {}
  Matrix values_;
};

enum class ValueRange { Bounded, Unbounded };

// Symmetric k-step graphon W(x, y) = Q[step(x)][step(y)] where step a
// occupies an interval of length weights[a]. Two step graphons that differ
// only by a relabeling of steps are different values here; they compare
// equal only through the cut distance.
class StepGraphon {
 public:
  // Validates symmetry, non-negativity, the [0, 1] bound unless `range` is
  // Unbounded, and strictly positive weights summing to one.
  static StepGraphon create(Matrix values, Vector weights,
                            ValueRange range = ValueRange::Bounded);
  static StepGraphon constant(double value);

  int steps() const { return static_cast<int>(values_.rows()); }
  const Matrix& values() const { return values_; }
  const Vector& weights() const { return weights_; }
  ValueRange range() const { return range_; }
  double max_value() const { return values_.maxCoeff(); }

  // rho * W. Stays Bounded only if the result still lies in [0, 1].
  StepGraphon scaled(double rho) const;

  // Cumulative step boundaries: 0 = c_0 < c_1 < ... < c_k = 1.
  std::vector<double> boundaries() const;
  // Step containing x, using half-open intervals [c_a, c_{a+1}).
  int step_of(double x) const;

 private:
  StepGraphon(Matrix values, Vector weights, ValueRange range)
      : values_(std::move(values)), weights_(std::move(weights)), range_(range) {}
  Matrix values_;
  Vector weights_;
  ValueRange range_;
};

// Possibly non-symmetric q1 x q2 step kernel with positive row and column
// weights (not required to sum to one). Kernels built from graphons have
// |values| <= 1; arithmetic on kernels (residuals, differences) may leave
// that range, so the bound is checked by the operations that rely on it.
class Kernel {
 public:
  static Kernel create(Matrix values, Vector row_weights, Vector col_weights);
  static Kernel from_graphon(const StepGraphon& w);

  int rows() const { return static_cast<int>(values_.rows()); }
  int cols() const { return static_cast<int>(values_.cols()); }
  const Matrix& values() const { return values_; }
  const Vector& row_weights() const { return row_weights_; }
  const Vector& col_weights() const { return col_weights_; }
  double max_abs() const { return values_.cwiseAbs().maxCoeff(); }

  Kernel negated() const;

 private:
  Kernel(Matrix values, Vector row_weights, Vector col_weights)
      : values_(std::move(values)),
        row_weights_(std::move(row_weights)),
        col_weights_(std::move(col_weights)) {}
  Matrix values_;
  Vector row_weights_;
  Vector col_weights_;
};

// Latent positions xi_1..xi_n, each in [0, 1], with the seed that drew them.
struct LatentSample {
  std::vector<double> xi;
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(xi.size()); }
};

double l1_norm(const StepGraphon& w);
double l2_norm(const StepGraphon& w);
// Weighted integral norms of a kernel: sum_ab r_a c_b |K_ab| and the root of
// sum_ab r_a c_b K_ab^2.
double l1_norm(const Kernel& k);
double l2_norm(const Kernel& k);

// The n-step equal-weight graphon reading off the matrix entries,
// f(x, y) = M[ceil(nx)][ceil(ny)]. The diagonal is kept as stored.
StepGraphon empirical_graphon(const Matrix& m,
                              ValueRange range = ValueRange::Bounded);
StepGraphon empirical_graphon(const ProbMatrix& m);
StepGraphon empirical_graphon(const AdjacencyMatrix& m);

// Number of equal pieces each step receives when refined to m equal steps:
// floor(m * w_a) plus one extra piece for the largest remainders
// (ties to the lower index).
std::vector<int> refinement_counts(const Vector& weights, int m);
// Step index of every piece of the m-step refinement, in step order.
std::vector<int> refinement_assignment(const Vector& weights, int m);

// Refines W to m equal steps. Exact (weakly isomorphic) when every m*w_a is
// an integer; otherwise the l1 distance to W is at most max(Q) * k / m.
// Throws ValidationError when m < k.
StepGraphon blowup(const StepGraphon& w, int m);

// Plain-text records. A graphon is written as
//   stepgraphon k
//   w_1 ... w_k
//   k rows of k values
// and a matrix as `matrix n` followed by n rows. Doubles use the shortest
// round-trip representation, so reading back is bit-exact.
void write_record(std::ostream& out, const StepGraphon& w);
void write_record(std::ostream& out, const Matrix& m);
StepGraphon read_stepgraphon(std::istream& in,
                             ValueRange range = ValueRange::Bounded);
Matrix read_matrix(std::istream& in);

std::string format_double(double value);

}  // namespace cutgraphon

#endif  // CUTGRAPHON_KERNEL_CORE_HPP_
