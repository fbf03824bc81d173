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

#include "cutgraphon/cut_norm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "cutgraphon/error.hpp"
#include "cutgraphon/rng.hpp"

namespace cutgraphon {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct RawWitness {
  std::vector<int> s;
  std::vector<int> t;
};

std::vector<int> indices_where(const std::vector<char>& mask) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(mask.size()); ++i) {
    if (mask[i]) out.push_back(i);
  }
  return out;
}

// Maximizes |sum_{S x T} m| by Gray-code enumeration of S over the rows of
// m; T collects the columns whose partial sums share the winning sign.
RawWitness enumerate_rows(const RowMajor& m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  Eigen::VectorXd colsum = Eigen::VectorXd::Zero(cols);
  std::uint32_t in_s = 0;
  std::uint32_t best_s = 0;
  bool best_positive = true;
  double best = 0.0;
  const std::uint64_t total = std::uint64_t{1} << rows;
  for (std::uint64_t code = 1; code < total; ++code) {
    const int row = std::countr_zero(code);
    const std::uint32_t bit = std::uint32_t{1} << row;
    in_s ^= bit;
    if (in_s & bit) {
      colsum += m.row(row).transpose();
    } else {
      colsum -= m.row(row).transpose();
    }
    double pos = 0.0;
    double neg = 0.0;
    for (int b = 0; b < cols; ++b) {
      double v = colsum[b];
      if (v > 0.0) {
        pos += v;
      } else {
        neg -= v;
      }
    }
    if (pos > best) {
      best = pos;
      best_s = in_s;
      best_positive = true;
    }
    if (neg > best) {
      best = neg;
      best_s = in_s;
      best_positive = false;
    }
  }
  RawWitness w;
  if (best <= 0.0) return w;
  colsum.setZero();
  for (int a = 0; a < rows; ++a) {
    if (best_s >> a & 1U) {
      w.s.push_back(a);
      colsum += m.row(a).transpose();
    }
  }
  for (int b = 0; b < cols; ++b) {
    if (best_positive ? colsum[b] > 0.0 : colsum[b] < 0.0) w.t.push_back(b);
  }
  return w;
}

RawWitness exact_witness(const Matrix& m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  if (std::min(rows, cols) > kExactCutLimit) {
    throw BudgetError("exact cut norm: " + std::to_string(rows) + "x" + std::to_string(cols) +
                      " exceeds the enumeration limit of " + std::to_string(kExactCutLimit) +
                      " on the smaller side; use the heuristic");
  }
  if (rows <= cols) return enumerate_rows(RowMajor(m));
  RawWitness w = enumerate_rows(RowMajor(m.transpose()));
  std::swap(w.s, w.t);
  return w;
}

double signed_sum(const Matrix& m, const std::vector<int>& s, const std::vector<int>& t) {
  double total = 0.0;
  for (int a : s) {
    for (int b : t) total += m(a, b);
  }
  return total;
}

// One run of 0/1 alternation on m from the column set `cols_in`.
// Returns (objective, S, T) at the fixed point.
double alternate_01(const Matrix& m, std::vector<char> cols_in, RawWitness& out) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::VectorXd t(cols);
  Eigen::VectorXd s(rows);
  std::vector<char> rows_in(rows, 0);
  double current = -1.0;
  for (int iter = 0; iter < 1000; ++iter) {
    for (Eigen::Index b = 0; b < cols; ++b) t[b] = cols_in[b] ? 1.0 : 0.0;
    Eigen::VectorXd rsum = m * t;
    for (Eigen::Index a = 0; a < rows; ++a) {
      rows_in[a] = rsum[a] > 0.0;
      s[a] = rows_in[a] ? 1.0 : 0.0;
    }
    Eigen::VectorXd csum = m.transpose() * s;
    double value = 0.0;
    for (Eigen::Index b = 0; b < cols; ++b) {
      cols_in[b] = csum[b] > 0.0;
      if (cols_in[b]) value += csum[b];
    }
    if (value <= current) break;
    current = value;
    out.s = indices_where(rows_in);
    out.t = indices_where(cols_in);
  }
  return current;
}

int sign_of(double v) { return v >= 0.0 ? 1 : -1; }

// f^T B g for sign vectors stored as +1/-1 doubles.
double bilinear(const Matrix& b, const Eigen::VectorXd& f, const Eigen::VectorXd& g) {
  return f.dot(b * g);
}

CutNormResult sign_result(const Matrix& b, const Eigen::VectorXd& f, const Eigen::VectorXd& g,
                          CutMethod method) {
  CutNormResult r;
  r.method = method;
  r.value = bilinear(b, f, g) / static_cast<double>(b.rows() * b.cols());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (f[i] > 0) r.witness_s.push_back(static_cast<int>(i));
  }
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    if (g[j] > 0) r.witness_t.push_back(static_cast<int>(j));
  }
  return r;
}

Eigen::VectorXd signs(const Eigen::VectorXd& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = sign_of(v[i]);
  return out;
}

// Sets of subsets of [count] with at most q elements, as bitmasks.
void for_each_small_subset(int count, int q, const std::function<void(std::uint64_t)>& visit) {
  std::vector<int> pick;
  std::function<void(int, std::uint64_t)> rec = [&](int start, std::uint64_t mask) {
    visit(mask);
    if (static_cast<int>(pick.size()) == q) return;
    for (int i = start; i < count; ++i) {
      pick.push_back(i);
      rec(i + 1, mask | (std::uint64_t{1} << i));
      pick.pop_back();
    }
  };
  rec(0, 0);
}

double subsets_up_to(int count, int q) {
  double total = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= q; ++j) {
    total += binom;
    binom = binom * (count - j) / (j + 1);
  }
  return total;
}

constexpr double kSubsetBudget = 4e6;
constexpr double kPairBudget = 2e8;

struct OneSided {
  double value = 0.0;
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
};

// max over |R1|, |R2| <= q of W[R2^r, R1^l] for the weighted matrix q.
OneSided one_sided_max(const Matrix& vals, const Vector& alpha, const Vector& beta, int q1,
                       int q2) {
  const int k1 = static_cast<int>(vals.rows());
  const int k2 = static_cast<int>(vals.cols());
  std::vector<std::uint64_t> row_sets;
  for_each_small_subset(k2, q2, [&](std::uint64_t r2) {
    std::uint64_t set = 0;
    for (int a = 0; a < k1; ++a) {
      double s = 0.0;
      for (int b = 0; b < k2; ++b) {
        if (r2 >> b & 1U) s += beta[b] * vals(a, b);
      }
      if (s > 0.0) set |= std::uint64_t{1} << a;
    }
    row_sets.push_back(set);
  });
  std::vector<std::uint64_t> col_sets;
  for_each_small_subset(k1, q1, [&](std::uint64_t r1) {
    std::uint64_t set = 0;
    for (int b = 0; b < k2; ++b) {
      double s = 0.0;
      for (int a = 0; a < k1; ++a) {
        if (r1 >> a & 1U) s += alpha[a] * vals(a, b);
      }
      if (s > 0.0) set |= std::uint64_t{1} << b;
    }
    col_sets.push_back(set);
  });
  for (auto* v : {&row_sets, &col_sets}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  if (static_cast<double>(row_sets.size()) * static_cast<double>(col_sets.size()) * k2 >
      kPairBudget) {
    throw BudgetError("q-subset bound: too many derived set pairs");
  }
  OneSided best;
  Eigen::VectorXd weighted(k2);
  for (std::uint64_t xs : row_sets) {
    weighted.setZero();
    for (int a = 0; a < k1; ++a) {
      if (xs >> a & 1U) weighted += alpha[a] * vals.row(a).transpose();
    }
    weighted = weighted.cwiseProduct(beta);
    for (std::uint64_t ys : col_sets) {
      double total = 0.0;
      for (int b = 0; b < k2; ++b) {
        if (ys >> b & 1U) total += weighted[b];
      }
      if (total > best.value) best = {total, xs, ys};
    }
  }
  return best;
}

std::vector<int> bits_to_indices(std::uint64_t mask, int count) {
  std::vector<int> out;
  for (int i = 0; i < count; ++i) {
    if (mask >> i & 1U) out.push_back(i);
  }
  return out;
}

}  // namespace

const char* to_string(CutMethod method) {
  switch (method) {
    case CutMethod::ExactEnumeration:
      return "exact";
    case CutMethod::AlternatingHeuristic:
      return "heuristic";
    case CutMethod::QSubsetBound:
      return "q-subset";
  }
  return "unknown";
}

double replay_cut(const Matrix& b, const std::vector<int>& s, const std::vector<int>& t) {
  return signed_sum(b, s, t) / static_cast<double>(b.rows() * b.cols());
}

double replay_cut(const Kernel& k, const std::vector<int>& s, const std::vector<int>& t) {
  double total = 0.0;
  for (int a : s) {
    for (int b : t) total += k.row_weights()[a] * k.col_weights()[b] * k.values()(a, b);
  }
  return total;
}

CutNormResult matrix_cut_norm_exact(const Matrix& b) {
  if (b.size() == 0) throw ValidationError("cut norm: empty matrix");
  RawWitness w = exact_witness(b);
  CutNormResult r;
  r.method = CutMethod::ExactEnumeration;
  r.value = std::abs(replay_cut(b, w.s, w.t));
  r.witness_s = std::move(w.s);
  r.witness_t = std::move(w.t);
  return r;
}

CutNormResult step_kernel_cut_norm_exact(const Kernel& k) {
  Matrix weighted = k.row_weights().asDiagonal() * k.values() * k.col_weights().asDiagonal();
  RawWitness w = exact_witness(weighted);
  CutNormResult r;
  r.method = CutMethod::ExactEnumeration;
  r.value = std::abs(replay_cut(k, w.s, w.t));
  r.witness_s = std::move(w.s);
  r.witness_t = std::move(w.t);
  return r;
}

CutNormResult matrix_cut_norm_heuristic(const Matrix& b, int restarts, std::uint64_t seed) {
  if (b.size() == 0) throw ValidationError("cut norm: empty matrix");
  if (restarts < 1) throw ValidationError("cut norm heuristic: restarts must be at least 1");
  const Eigen::Index cols = b.cols();
  const Matrix neg = -b;
  CutNormResult best;
  best.method = CutMethod::AlternatingHeuristic;
  double best_value = 0.0;
  for (int r = 0; r < restarts; ++r) {
    std::vector<char> start(cols, 1);
    if (r > 0) {
      CounterRng rng = CounterRng::stream(seed, {0x637574ULL, static_cast<std::uint64_t>(r)});
      for (Eigen::Index j = 0; j < cols; ++j) start[j] = rng.bernoulli(0.5);
    }
    for (const Matrix* m : {&b, &neg}) {
      RawWitness w;
      double value = alternate_01(*m, start, w);
      if (value > best_value) {
        best_value = value;
        best.witness_s = std::move(w.s);
        best.witness_t = std::move(w.t);
      }
    }
  }
  best.value = std::abs(replay_cut(b, best.witness_s, best.witness_t));
  return best;
}

CutNormResult inf1_norm(const Matrix& b, int restarts, std::uint64_t seed) {
  if (b.size() == 0) throw ValidationError("inf1 norm: empty matrix");
  if (restarts < 1) throw ValidationError("inf1 norm: restarts must be at least 1");
  const Eigen::Index cols = b.cols();
  Eigen::VectorXd best_f;
  Eigen::VectorXd best_g;
  double best = -1.0;
  if (cols <= kExactInf1Limit) {
    // g and -g give the same value, so fix the first sign.
    const std::uint64_t total = std::uint64_t{1} << (cols - 1);
    Eigen::VectorXd g(cols);
    for (std::uint64_t code = 0; code < total; ++code) {
      g[0] = 1.0;
      for (Eigen::Index j = 1; j < cols; ++j) g[j] = (code >> (j - 1) & 1U) ? -1.0 : 1.0;
      Eigen::VectorXd f = signs(b * g);
      double value = bilinear(b, f, g);
      if (value > best) {
        best = value;
        best_f = f;
        best_g = g;
      }
    }
    return sign_result(b, best_f, best_g, CutMethod::ExactEnumeration);
  }
  for (int r = 0; r < restarts; ++r) {
    Eigen::VectorXd g = Eigen::VectorXd::Ones(cols);
    if (r > 0) {
      CounterRng rng = CounterRng::stream(seed, {0x696e6631ULL, static_cast<std::uint64_t>(r)});
      for (Eigen::Index j = 0; j < cols; ++j) g[j] = rng.bernoulli(0.5) ? 1.0 : -1.0;
    }
    double current = -1.0;
    Eigen::VectorXd f;
    for (int iter = 0; iter < 1000; ++iter) {
      f = signs(b * g);
      Eigen::VectorXd g_next = signs(b.transpose() * f);
      double value = bilinear(b, f, g_next);
      if (value <= current) break;
      current = value;
      g = g_next;
    }
    f = signs(b * g);
    double value = bilinear(b, f, g);
    if (value > best) {
      best = value;
      best_f = f;
      best_g = g;
    }
  }
  return sign_result(b, best_f, best_g, CutMethod::AlternatingHeuristic);
}

std::pair<double, double> cut_norm_sandwich_check(const Matrix& b) {
  if (b.cols() > kExactInf1Limit) {
    throw BudgetError("sandwich check: exact inf1 norm needs at most " +
                      std::to_string(kExactInf1Limit) + " columns");
  }
  double lower = matrix_cut_norm_exact(b).value;
  double upper = inf1_norm(b, 1, 0).value;
  constexpr double tol = 1e-12;
  if (lower > upper + tol || upper > 4.0 * lower + tol) {
    throw std::logic_error("sandwich check violated: cut " + format_double(lower) + ", inf1 " +
                           format_double(upper));
  }
  return {lower, upper};
}

CutNormResult q_subset_upper_bound(const Kernel& k, int q) {
  if (q < 1) throw ValidationError("q-subset bound: q must be positive");
  if (k.max_abs() > 1.0 + 1e-12) {
    throw ValidationError("q-subset bound: kernel values must lie in [-1, 1]");
  }
  const int k1 = k.rows();
  const int k2 = k.cols();
  if (k1 > 64 || k2 > 64) throw BudgetError("q-subset bound: more than 64 steps");
  const int q1 = std::min(q, k1);
  const int q2 = std::min(q, k2);
  if (subsets_up_to(k1, q1) > kSubsetBudget || subsets_up_to(k2, q2) > kSubsetBudget) {
    throw BudgetError("q-subset bound: subset enumeration exceeds budget");
  }
  const Vector& alpha = k.row_weights();
  const Vector& beta = k.col_weights();
  OneSided plus = one_sided_max(k.values(), alpha, beta, q1, q2);
  OneSided minus = one_sided_max(-k.values(), alpha, beta, q1, q2);
  const OneSided& top = minus.value > plus.value ? minus : plus;
  const double u = alpha.sum();
  const double v = beta.sum();
  const double slack = u * std::sqrt(k2 * beta.squaredNorm() / q2) +
                       v * std::sqrt(k1 * alpha.squaredNorm() / q1);
  CutNormResult r;
  r.method = CutMethod::QSubsetBound;
  r.is_upper_bound = true;
  r.value = top.value + slack;
  r.witness_s = bits_to_indices(top.rows, k1);
  r.witness_t = bits_to_indices(top.cols, k2);
  return r;
}

double khintchine_lower_bound(const Kernel& k) {
  return l1_norm(k) / (4.0 * std::sqrt(2.0 * k.cols()));
}

}  // namespace cutgraphon
