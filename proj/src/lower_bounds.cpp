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

#include "cutgraphon/lower_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include "cutgraphon/cut_distance.hpp"
#include "cutgraphon/error.hpp"
#include "cutgraphon/rng.hpp"

namespace cutgraphon {
namespace {

constexpr std::uint64_t kCodeTag = 0x636f6465ULL;
constexpr std::uint64_t kBlockTag = 0x626c6f636bULL;
constexpr std::uint64_t kSpreadTag = 0x737072656164ULL;
constexpr double kMatrixFamilyBytes = 512.0 * 1024 * 1024;

int hamming(const SignVector& a, const SignVector& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

// Keeps draws whose distance to every kept word passes `accept`.
SignCode rejection_code(std::size_t target, int max_draws,
                        const std::function<SignVector(int)>& draw,
                        const std::function<bool(int)>& accept) {
  SignCode code;
  code.target = target;
  for (int t = 0; t < max_draws && code.words.size() < target; ++t) {
    SignVector w = draw(t);
    bool ok = true;
    for (const SignVector& kept : code.words) {
      if (!accept(hamming(w, kept))) {
        ok = false;
        break;
      }
    }
    if (ok) code.words.push_back(std::move(w));
  }
  code.reached_target = code.words.size() >= target;
  code.min_distance = code.words.size() < 2 ? 0 : std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < code.words.size(); ++i) {
    for (std::size_t j = i + 1; j < code.words.size(); ++j) {
      int d = hamming(code.words[i], code.words[j]);
      code.min_distance = std::min(code.min_distance, d);
      code.max_distance = std::max(code.max_distance, d);
    }
  }
  return code;
}

SignCode matrix_code(int n, std::size_t cap, std::uint64_t seed) {
  double wanted = std::ceil(std::pow(2.0, n / 8.0));
  std::size_t target = wanted >= static_cast<double>(cap) ? cap : static_cast<std::size_t>(wanted);
  auto draw = [&](int t) {
    CounterRng rng = CounterRng::stream(seed, {kCodeTag, 1, static_cast<std::uint64_t>(t)});
    SignVector w(n);
    for (int& s : w) s = rng.bernoulli(0.5) ? 1 : -1;
    return w;
  };
  auto accept = [n](int d) { return 4 * d >= n && 4 * d <= 3 * n; };
  return rejection_code(target, static_cast<int>(50 * target + 1000), draw, accept);
}

PackingFamily build_matrix_family(int n, double rho, double eps, const SignCode& code) {
  PackingFamily fam;
  fam.n = n;
  fam.k = 2;
  fam.epsilon = eps;
  fam.target = code.target;
  fam.codes = code.words;
  for (const SignVector& u : code.words) {
    Matrix theta(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) theta(i, j) = i == j ? 0.0 : rho / 2.0 + u[i] * u[j] * eps;
    }
    fam.matrices.push_back(ProbMatrix::from(std::move(theta)));
  }
  const double nn = static_cast<double>(n) * n;
  double sep = code.words.size() < 2 ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < code.words.size(); ++i) {
    for (std::size_t j = i + 1; j < code.words.size(); ++j) {
      int d = hamming(code.words[i], code.words[j]);
      sep = std::min(sep, eps / 2.0 * d * (n - d) / nn);
    }
  }
  fam.separation_lower = sep;
  fam.kl_budget = 16.0 * nn * eps * eps / (3.0 * rho);
  const double log_size = std::log(static_cast<double>(fam.size()));
  fam.fano_ready = fam.size() >= 3 && eps < rho / 4.0 && fam.kl_budget <= log_size / 32.0;
  return fam;
}

SignCode checked_matrix_code(int n, double rho, std::uint64_t seed, std::size_t cap) {
  if (n < 8) throw ValidationError("matrix packing: n must be at least 8");
  if (!(rho > 0.0 && rho <= 1.0)) throw ValidationError("matrix packing: rho must lie in (0, 1]");
  if (cap < 2) throw ValidationError("matrix packing: cap must be at least 2");
  double words = std::min(static_cast<double>(cap), std::ceil(std::pow(2.0, n / 8.0)));
  if (words * n * n * sizeof(double) > kMatrixFamilyBytes) {
    throw BudgetError("matrix packing: family would not fit in memory; lower the cap");
  }
  SignCode code = matrix_code(n, cap, seed);
  if (code.words.size() < 2) throw ValidationError("matrix packing: fewer than two words");
  return code;
}

PackingFamily two_step_family(int n, double rho) {
  const double eps = std::min(0.25, 0.5 / std::sqrt(static_cast<double>(n)));
  Matrix q(2, 2);
  q << 1.0, 1.0, 1.0, 0.0;
  PackingFamily fam;
  fam.n = n;
  fam.k = 2;
  fam.epsilon = eps;
  fam.target = 2;
  for (int s : {1, -1}) {
    Vector w(2);
    w << 0.5 + s * eps, 0.5 - s * eps;
    fam.graphons.push_back(StepGraphon::create(q, w).scaled(rho));
    fam.codes.push_back({s});
  }
  fam.separation_lower =
      delta_cut_lower(fam.graphons[0], fam.graphons[1], standard_motifs());
  const double p = 0.5 + eps;
  const double r = 0.5 - eps;
  fam.kl_budget = n * (p * std::log(p / r) + r * std::log(r / p));
  fam.fano_ready = false;
  return fam;
}

}  // namespace

SignCode varshamov_gilbert_code(int k1, std::uint64_t seed, int max_draws) {
  if (k1 < 8 || k1 % 2 != 0) throw ValidationError("sign code: k1 must be even and at least 8");
  if (max_draws < 1) throw ValidationError("sign code: max_draws must be positive");
  auto target = static_cast<std::size_t>(std::ceil(std::exp(k1 / 16.0)));
  auto draw = [&](int t) {
    CounterRng rng = CounterRng::stream(seed, {kCodeTag, 0, static_cast<std::uint64_t>(t)});
    SignVector w(k1, -1);
    std::fill(w.begin(), w.begin() + k1 / 2, 1);
    std::vector<int> order = random_permutation(k1, rng);
    SignVector out(k1);
    for (int i = 0; i < k1; ++i) out[i] = w[order[i]];
    return out;
  };
  auto accept = [k1](int d) { return 4 * d > k1; };
  return rejection_code(target, max_draws, draw, accept);
}

RademacherBlockMatrix rademacher_block_matrix(int k1, int mk, std::uint64_t seed, int max_tries) {
  if (mk < 8) throw ValidationError("block matrix: mk must be at least 8");
  if (k1 < 2) throw ValidationError("block matrix: k1 must be at least 2");
  for (int t = 0; t < max_tries; ++t) {
    CounterRng rng = CounterRng::stream(seed, {kBlockTag, static_cast<std::uint64_t>(t)});
    Matrix b(k1, mk);
    for (int a = 0; a < k1; ++a) {
      for (int c = 0; c < mk; ++c) b(a, c) = rng.bernoulli(0.5) ? 1.0 : -1.0;
    }
    Matrix gram = b * b.transpose();
    bool ok = true;
    for (int a = 0; a < k1 && ok; ++a) {
      for (int c = a + 1; c < k1; ++c) {
        if (4.0 * std::abs(gram(a, c)) > mk) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return RademacherBlockMatrix{std::move(b), k1, mk, t + 1, true};
  }
  throw BudgetError("block matrix: no draw met the row inner-product bound in " +
                    std::to_string(max_tries) + " tries");
}

SpreadCheck spot_check_spread(const RademacherBlockMatrix& rb, int samples, std::uint64_t seed) {
  const int k1 = rb.k1;
  const int mk = rb.mk;
  const int rows = k1 / 16;
  if (rows < 1) throw ValidationError("spread check: k1 must be at least 16");
  const int zsize = (7 * mk + 7) / 8;
  const int grid = 8 * mk;
  const double threshold = 7.0 * k1 * mk / 1024.0;
  SpreadCheck out;
  out.samples = samples;
  out.min_ratio = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    CounterRng rng = CounterRng::stream(seed, {kSpreadTag, static_cast<std::uint64_t>(s)});
    std::vector<int> row_order = random_permutation(k1, rng);
    std::vector<int> col_order = random_permutation(mk, rng);
    double total = 0.0;
    for (int zi = 0; zi < zsize; ++zi) {
      const int b = col_order[zi];
      // Row of the stochastic matrix: up to eight columns sharing the grid.
      const int parts = 1 + static_cast<int>(rng.below(8));
      std::vector<int> cols;
      while (static_cast<int>(cols.size()) < parts) {
        int c = static_cast<int>(rng.below(mk));
        if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
      }
      std::vector<int> cuts{0, grid};
      while (static_cast<int>(cuts.size()) < parts + 1) {
        int c = 1 + static_cast<int>(rng.below(grid - 1));
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
      }
      std::sort(cuts.begin(), cuts.end());
      for (int a = 0; a < rows; ++a) {
        const int x = row_order[a];
        const int y = row_order[rows + a];
        double mixed = 0.0;
        for (int p = 0; p < parts; ++p) {
          mixed += static_cast<double>(cuts[p + 1] - cuts[p]) / grid * rb.b(y, cols[p]);
        }
        total += std::abs(rb.b(x, b) - mixed);
      }
    }
    out.min_ratio = std::min(out.min_ratio, total / threshold);
  }
  if (samples == 0) out.min_ratio = 0.0;
  out.passed = samples > 0 && out.min_ratio >= 1.0;
  return out;
}

PackingFamily matrix_packing(int n, double rho, std::uint64_t seed, std::size_t cap) {
  SignCode code = checked_matrix_code(n, rho, seed, cap);
  const double log_size = std::log(static_cast<double>(code.words.size()));
  const double nn = static_cast<double>(n) * n;
  // Largest eps with 16 n^2 eps^2 / (3 rho) <= log(size) / 32, shaved by a
  // relative 1e-12 so the inequality survives rounding.
  double eps = std::sqrt(3.0 * rho * log_size / (512.0 * nn)) * (1.0 - 1e-12);
  eps = std::min(eps, rho / 4.0 * (1.0 - 1e-9));
  return build_matrix_family(n, rho, eps, code);
}

PackingFamily matrix_packing_with_epsilon(int n, double rho, double eps, std::uint64_t seed,
                                          std::size_t cap) {
  if (!(eps >= 0.0 && eps <= rho / 2.0)) {
    throw ValidationError("matrix packing: eps must lie in [0, rho/2]");
  }
  return build_matrix_family(n, rho, eps, checked_matrix_code(n, rho, seed, cap));
}

int large_step_count(int k) { return static_cast<int>(std::ceil(128.0 * std::log(k))); }

PackingFamily graphon_packing(int k, int n, double rho, std::uint64_t seed) {
  if (!(rho > 0.0 && rho <= 1.0)) throw ValidationError("graphon packing: rho must lie in (0, 1]");
  if (n < 1) throw ValidationError("graphon packing: n must be positive");
  if (k == 2) return two_step_family(n, rho);
  if (k % 32 != 0 || k < 64 || k > n) {
    throw ValidationError("graphon packing: k must be 2 or a multiple of 32 with 64 <= k <= n");
  }
  const int k1 = k / 2;
  const int mk = large_step_count(k);
  const double eps = std::sqrt(3.0 / (4096.0 * n * k1));
  if (eps > 1.0 / (8.0 * k1)) throw ValidationError("graphon packing: n too small for k");

  SignCode code = varshamov_gilbert_code(k1, seed);
  RademacherBlockMatrix rb = rademacher_block_matrix(k1, mk, seed);
  const int steps = k1 + mk;
  Matrix q = Matrix::Constant(steps, steps, 0.5);
  for (int a = 0; a < k1; ++a) {
    for (int c = 0; c < mk; ++c) {
      double v = (1.0 + rb.b(a, c)) / 2.0;
      q(a, k1 + c) = v;
      q(k1 + c, a) = v;
    }
  }

  PackingFamily fam;
  fam.n = n;
  fam.k = k;
  fam.mk = mk;
  fam.epsilon = eps;
  fam.target = code.target;
  fam.codes = code.words;
  for (const SignVector& u : code.words) {
    Vector w(steps);
    for (int a = 0; a < k1; ++a) w[a] = 1.0 / (2.0 * k1) + u[a] * eps;
    for (int c = 0; c < mk; ++c) w[k1 + c] = 1.0 / (2.0 * mk);
    fam.graphons.push_back(StepGraphon::create(q, std::move(w)).scaled(rho));
  }

  // Motif densities once per graphon, then the pairwise bound.
  std::vector<Motif> motifs = standard_motifs();
  std::vector<std::vector<double>> dens;
  for (const StepGraphon& g : fam.graphons) {
    std::vector<double> t;
    for (const Motif& f : motifs) t.push_back(homomorphism_density(f, g));
    dens.push_back(std::move(t));
  }
  double sep = fam.size() < 2 ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dens.size(); ++i) {
    for (std::size_t j = i + 1; j < dens.size(); ++j) {
      double best = 0.0;
      for (std::size_t f = 0; f < motifs.size(); ++f) {
        best = std::max(best, std::abs(dens[i][f] - dens[j][f]) / (4.0 * motifs[f].edge_count()));
      }
      sep = std::min(sep, best);
    }
  }
  fam.separation_lower = sep;
  fam.separation_theory = rho * k * eps / std::sqrt(static_cast<double>(mk));
  std::vector<double> plus(k1, eps);
  fam.kl_budget = kl_bound(plus, plus, n, eps, k1);
  fam.fano_ready =
      fam.size() >= 3 && fam.kl_budget <= std::log(static_cast<double>(fam.size())) / 32.0;
  return fam;
}

double kl_bound(const std::vector<double>& u, const std::vector<double>& v, int n, double eps,
                int k1) {
  if (k1 < 1 || static_cast<int>(u.size()) != k1 || static_cast<int>(v.size()) != k1) {
    throw ValidationError("kl_bound: perturbations must have k1 entries");
  }
  if (!(eps >= 0.0) || eps > 1.0 / (8.0 * k1)) {
    throw ValidationError("kl_bound: eps must lie in [0, 1/(8 k1)]");
  }
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (std::abs(std::abs(u[a]) - eps) > 1e-12 || std::abs(std::abs(v[a]) - eps) > 1e-12) {
      throw ValidationError("kl_bound: every perturbation must be +eps or -eps");
    }
  }
  return 32.0 * n * static_cast<double>(k1) * k1 * eps * eps / 3.0;
}

double latent_kl_exact(const std::vector<double>& u, const std::vector<double>& v, int k1, int mk,
                       int n) {
  if (static_cast<int>(u.size()) != k1 || static_cast<int>(v.size()) != k1 || mk < 0) {
    throw ValidationError("latent_kl_exact: perturbations must have k1 entries");
  }
  double total = 0.0;
  for (int a = 0; a < k1; ++a) {
    double p = 1.0 / (2.0 * k1) + u[a];
    double q = 1.0 / (2.0 * k1) + v[a];
    if (!(p > 0.0 && q > 0.0)) throw ValidationError("latent_kl_exact: non-positive step mass");
    total += p * std::log(p / q);
  }
  // Large steps carry the same mass under both laws and contribute nothing.
  for (int c = 0; c < mk; ++c) {
    double p = 1.0 / (2.0 * mk);
    total += p * std::log(p / p);
  }
  return n * total;
}

void write_packing_metadata(std::ostream& out, const PackingFamily& f) {
  out << "size=" << f.size() << '\n'
      << "n=" << f.n << '\n'
      << "k=" << f.k << '\n'
      << "epsilon=" << format_double(f.epsilon) << '\n'
      << "klBudget=" << format_double(f.kl_budget) << '\n'
      << "separationLower=" << format_double(f.separation_lower) << '\n'
      << "separationTheory=" << format_double(f.separation_theory) << '\n'
      << "fanoReady=" << (f.fano_ready ? "true" : "false") << '\n';
}

}  // namespace cutgraphon
