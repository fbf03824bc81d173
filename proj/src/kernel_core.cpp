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

#include "cutgraphon/kernel_core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

#include "cutgraphon/error.hpp"

namespace cutgraphon {
namespace {

constexpr double kSymmetryTolerance = 1e-12;

void require_square_symmetric(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw ValidationError(std::string(what) + ": matrix must be square");
  }
  if (!m.allFinite()) {
    throw ValidationError(std::string(what) + ": non-finite entry");
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > kSymmetryTolerance) {
        throw ValidationError(std::string(what) + ": matrix is not symmetric");
      }
    }
  }
}

void symmetrize(Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      double avg = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = avg;
      m(j, i) = avg;
    }
  }
}

Vector normalized_weights(Vector w, const char* what) {
  if (w.size() == 0) throw ValidationError(std::string(what) + ": no weights");
  if (!w.allFinite() || (w.array() <= 0.0).any()) {
    throw ValidationError(std::string(what) + ": weights must be finite and strictly positive");
  }
  double total = w.sum();
  double gap = std::abs(total - 1.0);
  if (gap > kWeightRenormalizeTolerance) {
    throw ValidationError(std::string(what) + ": weights sum to " + format_double(total) +
                          ", expected 1");
  }
  if (gap > kWeightTolerance) w /= total;
  return w;
}

template <typename T>
T parse_number(const std::string& token) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ValidationError("record: cannot parse '" + token + "'");
  }
  return value;
}

std::string next_token(std::istream& in) {
  std::string token;
  if (!(in >> token)) throw ValidationError("record: unexpected end of input");
  return token;
}

int read_header(std::istream& in, const std::string& expected) {
  std::string tag = next_token(in);
  if (tag != expected) {
    throw ValidationError("record: expected '" + expected + "', found '" + tag + "'");
  }
  int size = parse_number<int>(next_token(in));
  if (size < 1) throw ValidationError("record: size must be positive");
  return size;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

ProbMatrix ProbMatrix::from(Matrix values) {
  require_square_symmetric(values, "ProbMatrix");
  symmetrize(values);
  if (values.rows() < 1) throw ValidationError("ProbMatrix: empty matrix");
  if (!values.diagonal().isZero(0.0)) {
    throw ValidationError("ProbMatrix: diagonal must be zero");
  }
  if (values.minCoeff() < 0.0 || values.maxCoeff() > 1.0) {
    throw ValidationError("ProbMatrix: entries must lie in [0, 1]");
  }
  return ProbMatrix(std::move(values));
}

AdjacencyMatrix AdjacencyMatrix::from(Matrix values) {
  require_square_symmetric(values, "AdjacencyMatrix");
  if (values.rows() < 1) throw ValidationError("AdjacencyMatrix: empty matrix");
  if (!values.diagonal().isZero(0.0)) {
    throw ValidationError("AdjacencyMatrix: diagonal must be zero");
  }
  if (!((values.array() == 0.0) || (values.array() == 1.0)).all()) {
    throw ValidationError("AdjacencyMatrix: entries must be 0 or 1");
  }
  return AdjacencyMatrix(std::move(values));
}

std::int64_t AdjacencyMatrix::edge_count() const {
  return static_cast<std::int64_t>(std::llround(values_.sum() / 2.0));
}

StepGraphon StepGraphon::create(Matrix values, Vector weights, ValueRange range) {
  require_square_symmetric(values, "StepGraphon");
  symmetrize(values);
  if (values.rows() < 1) throw ValidationError("StepGraphon: no steps");
  if (weights.size() != values.rows()) {
    throw ValidationError("StepGraphon: weight count does not match step count");
  }
  if (values.minCoeff() < 0.0) throw ValidationError("StepGraphon: negative value");
  if (range == ValueRange::Bounded && values.maxCoeff() > 1.0) {
    throw ValidationError("StepGraphon: value above 1 in a bounded graphon");
  }
  weights = normalized_weights(std::move(weights), "StepGraphon");
  return StepGraphon(std::move(values), std::move(weights), range);
}

StepGraphon StepGraphon::constant(double value) {
  return create(Matrix::Constant(1, 1, value), Vector::Ones(1),
                value > 1.0 ? ValueRange::Unbounded : ValueRange::Bounded);
}

StepGraphon StepGraphon::scaled(double rho) const {
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw ValidationError("StepGraphon::scaled: factor must be finite and non-negative");
  }
  Matrix q = values_ * rho;
  ValueRange r = range_;
  if (q.maxCoeff() > 1.0) r = ValueRange::Unbounded;
  return StepGraphon(std::move(q), weights_, r);
}

std::vector<double> StepGraphon::boundaries() const {
  std::vector<double> c(weights_.size() + 1, 0.0);
  for (Eigen::Index a = 0; a < weights_.size(); ++a) c[a + 1] = c[a] + weights_[a];
  c.back() = 1.0;
  return c;
}

int StepGraphon::step_of(double x) const {
  std::vector<double> c = boundaries();
  // First boundary strictly greater than x closes the step containing x.
  auto it = std::upper_bound(c.begin() + 1, c.end(), x);
  int step = static_cast<int>(it - c.begin()) - 1;
  return std::clamp(step, 0, steps() - 1);
}

Kernel Kernel::create(Matrix values, Vector row_weights, Vector col_weights) {
  if (values.rows() < 1 || values.cols() < 1) throw ValidationError("Kernel: empty");
  if (row_weights.size() != values.rows() || col_weights.size() != values.cols()) {
    throw ValidationError("Kernel: weight count does not match shape");
  }
  if (!values.allFinite()) throw ValidationError("Kernel: non-finite value");
  if (!row_weights.allFinite() || !col_weights.allFinite() ||
      (row_weights.array() <= 0.0).any() || (col_weights.array() <= 0.0).any()) {
    throw ValidationError("Kernel: weights must be finite and strictly positive");
  }
  return Kernel(std::move(values), std::move(row_weights), std::move(col_weights));
}

Kernel Kernel::from_graphon(const StepGraphon& w) {
  return Kernel(w.values(), w.weights(), w.weights());
}

Kernel Kernel::negated() const { return Kernel(-values_, row_weights_, col_weights_); }

double l1_norm(const StepGraphon& w) {
  return w.weights().dot(w.values().cwiseAbs() * w.weights());
}

double l2_norm(const StepGraphon& w) {
  return std::sqrt(w.weights().dot(w.values().cwiseAbs2() * w.weights()));
}

double l1_norm(const Kernel& k) {
  return k.row_weights().dot(k.values().cwiseAbs() * k.col_weights());
}

double l2_norm(const Kernel& k) {
  return std::sqrt(k.row_weights().dot(k.values().cwiseAbs2() * k.col_weights()));
}

StepGraphon empirical_graphon(const Matrix& m, ValueRange range) {
  const auto n = m.rows();
  if (n < 1) throw ValidationError("empirical_graphon: empty matrix");
  return StepGraphon::create(m, Vector::Constant(n, 1.0 / static_cast<double>(n)), range);
}

StepGraphon empirical_graphon(const ProbMatrix& m) { return empirical_graphon(m.values()); }

StepGraphon empirical_graphon(const AdjacencyMatrix& m) { return empirical_graphon(m.values()); }

std::vector<int> refinement_counts(const Vector& weights, int m) {
  const int k = static_cast<int>(weights.size());
  if (m < k) throw ValidationError("blowup: target size smaller than step count");
  std::vector<int> counts(k);
  std::vector<double> rem(k);
  int used = 0;
  for (int a = 0; a < k; ++a) {
    double exact = static_cast<double>(m) * weights[a];
    // Slack absorbs weights like 0.3 whose product with m lands just below
    // an integer.
    counts[a] = static_cast<int>(std::floor(exact + 1e-9));
    rem[a] = exact - counts[a];
    used += counts[a];
  }
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return rem[x] > rem[y]; });
  for (int i = 0; used < m; i = (i + 1) % k, ++used) ++counts[order[i]];
  // Every step keeps at least one piece so the refinement still sees it.
  for (int a = 0; a < k; ++a) {
    if (counts[a] > 0) continue;
    int donor = static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    --counts[donor];
    counts[a] = 1;
  }
  return counts;
}

std::vector<int> refinement_assignment(const Vector& weights, int m) {
  std::vector<int> counts = refinement_counts(weights, m);
  std::vector<int> assign;
  assign.reserve(m);
  for (int a = 0; a < static_cast<int>(counts.size()); ++a) {
    assign.insert(assign.end(), counts[a], a);
  }
  return assign;
}

StepGraphon blowup(const StepGraphon& w, int m) {
  std::vector<int> assign = refinement_assignment(w.weights(), m);
  Matrix q(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) q(i, j) = w.values()(assign[i], assign[j]);
  }
  return StepGraphon::create(std::move(q), Vector::Constant(m, 1.0 / m), w.range());
}

void write_record(std::ostream& out, const StepGraphon& w) {
  const int k = w.steps();
  out << "stepgraphon " << k << '\n';
  for (int a = 0; a < k; ++a) out << (a ? " " : "") << format_double(w.weights()[a]);
  out << '\n';
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) out << (b ? " " : "") << format_double(w.values()(a, b));
    out << '\n';
  }
}

void write_record(std::ostream& out, const Matrix& m) {
  out << "matrix " << m.rows() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << format_double(m(i, j));
    out << '\n';
  }
}

StepGraphon read_stepgraphon(std::istream& in, ValueRange range) {
  const int k = read_header(in, "stepgraphon");
  Vector w(k);
  for (int a = 0; a < k; ++a) w[a] = parse_number<double>(next_token(in));
  Matrix q(k, k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) q(a, b) = parse_number<double>(next_token(in));
  }
  return StepGraphon::create(std::move(q), std::move(w), range);
}

Matrix read_matrix(std::istream& in) {
  const int n = read_header(in, "matrix");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = parse_number<double>(next_token(in));
  }
  return m;
}

}  // namespace cutgraphon
