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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cutgraphon/cut_distance.hpp"
#include "cutgraphon/cut_norm.hpp"
#include "cutgraphon/estimators.hpp"
#include "cutgraphon/experiments.hpp"
#include "cutgraphon/kernel_core.hpp"
#include "cutgraphon/lower_bounds.hpp"
#include "cutgraphon/regularity.hpp"
#include "cutgraphon/rng.hpp"
#include "cutgraphon/samplers.hpp"

namespace cg = cutgraphon;
using cg::Matrix;
using cg::Vector;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) { return cg::format_double(v); }

Matrix uniform_matrix(int rows, int cols, cg::CounterRng& rng, double lo, double hi) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = lo + (hi - lo) * rng.uniform();
  }
  return m;
}

std::vector<Matrix> criterion1_instances() {
  cg::CounterRng rng = cg::CounterRng::stream(2024, {1});
  std::vector<Matrix> out;
  for (int i = 0; i < 500; ++i) {
    int n = 2 + static_cast<int>(rng.below(9));
    out.push_back(uniform_matrix(n, n, rng, -1.0, 1.0));
  }
  return out;
}

Outcome heuristic_vs_exact() {
  auto t0 = Clock::now();
  auto mats = criterion1_instances();
  int above = 0;
  int equal = 0;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    double exact = cg::matrix_cut_norm_exact(mats[i]).value;
    double heur = cg::matrix_cut_norm_heuristic(mats[i], 64, i).value;
    above += heur > exact + 1e-12;
    equal += std::abs(heur - exact) <= 1e-12;
  }
  double secs = seconds_since(t0);
  double frac = static_cast<double>(equal) / mats.size();
  return {above == 0 && frac >= 0.95 && secs < 60.0,
          "heuristic>exact on " + std::to_string(above) + "/500, equal on " + fmt(frac) +
              ", " + fmt(std::round(secs * 100) / 100) + " s"};
}

Outcome sandwich() {
  auto mats = criterion1_instances();
  int violations = 0;
  for (const auto& m : mats) {
    try {
      cg::cut_norm_sandwich_check(m);
    } catch (const std::logic_error&) {
      ++violations;
    }
  }
  Matrix chk(2, 2);
  chk << 1, -1, -1, 1;
  auto [lo, hi] = cg::cut_norm_sandwich_check(chk);
  double ratio = hi / lo;
  return {violations == 0 && std::abs(ratio - 4.0) <= 1e-12,
          std::to_string(violations) + " violations on 500, checkerboard ratio " + fmt(ratio)};
}

Outcome kernel_bracket() {
  cg::CounterRng rng = cg::CounterRng::stream(2024, {3});
  int violations = 0;
  for (int t = 0; t < 200; ++t) {
    int p = 1 + static_cast<int>(rng.below(8));
    int q = 1 + static_cast<int>(rng.below(8));
    Matrix v = uniform_matrix(p, q, rng, -1.0, 1.0);
    Vector r = uniform_matrix(p, 1, rng, 0.05, 1.0);
    Vector c = uniform_matrix(q, 1, rng, 0.05, 1.0);
    auto k = cg::Kernel::create(v, r / r.sum(), c / c.sum());
    int subset = 1 + t % 4;
    double lo = cg::khintchine_lower_bound(k);
    double exact = cg::step_kernel_cut_norm_exact(k).value;
    double hi = cg::q_subset_upper_bound(k, subset).value;
    violations += lo > exact + 1e-12 || exact > hi + 1e-12;
  }
  return {violations == 0, std::to_string(violations) + " violations on 200 kernels"};
}

Outcome bernstein_constant() {
  auto t0 = Clock::now();
  const int n = 64;
  std::string detail;
  bool ok = true;
  for (double rho : {1.0, 0.25}) {
    auto spec = cg::make_model_spec(cg::truth_graphon("random", 4, 7), rho, n, 7);
    auto theta = cg::sample_theta(spec, cg::sample_latents(n, 7));
    double total = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      auto a = cg::sample_adjacency(theta, 1000 + rep);
      total += cg::matrix_cut_norm_heuristic(a.values() - theta.values(), 8, rep).value;
    }
    double mean = total / 100.0;
    double bound = cg::bernstein_cut_envelope(theta);
    ok &= mean <= bound;
    detail += "rho=" + fmt(rho) + ": " + fmt(mean) + " <= " + fmt(bound) + "; ";
  }
  double secs = seconds_since(t0);
  return {ok && secs < 120.0, detail + fmt(std::round(secs * 100) / 100) + " s"};
}

Outcome rate_slopes() {
  auto t0 = Clock::now();
  cg::ExperimentConfig a;
  a.ns = {32, 64, 128, 256};
  a.ks = {4};
  a.rhos = {1.0};
  a.estimators = {cg::EstimatorKind::Adjacency};
  a.metrics = {cg::RiskMetric::Cut};
  a.reps = 50;
  a.seed = 11;
  auto ra = cg::run_risk_experiment(a);
  double slope_a = cg::fit_rate_slope(ra.rows, cg::SlopeAxis::N, cg::SlopeTransform::Log).slope;

  cg::ExperimentConfig b;
  b.ns = {256};
  b.ks = {4, 8, 16, 32};
  b.rhos = {1.0};
  b.estimators = {cg::EstimatorKind::Adjacency};
  b.metrics = {cg::RiskMetric::DeltaCut};
  b.reps = 10;
  b.seed = 12;
  auto rb = cg::run_risk_experiment(b);
  double slope_b =
      cg::fit_rate_slope(rb.rows, cg::SlopeAxis::K, cg::SlopeTransform::KOverLogK).slope;
  double secs = seconds_since(t0);
  bool ok = std::abs(slope_a + 0.5) <= 0.1 && std::abs(slope_b - 0.5) <= 0.15 && secs < 600.0 &&
            ra.failures.empty() && rb.failures.empty();
  std::string risks;
  for (const auto& r : rb.rows) risks += " " + fmt(r.mean_risk);
  return {ok, "(a) slope " + fmt(slope_a) + ", (b) slope " + fmt(slope_b) + " (risks" + risks +
                  "), " + fmt(std::round(secs * 100) / 100) + " s"};
}

Outcome svt_properties() {
  cg::CounterRng rng = cg::CounterRng::stream(2024, {6});
  Matrix half = Matrix::Constant(40, 40, 0.3);
  half.diagonal().setZero();
  auto a0 = cg::sample_adjacency(cg::ProbMatrix::from(half), 1);
  auto round = cg::estimate_svt(a0, cg::SvtConfig::with_threshold(0.0));
  double round_err = (round.raw - a0.values()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Matrix> es(a0.values());
  auto zero = cg::estimate_svt(
      a0, cg::SvtConfig::with_threshold(es.eigenvalues().cwiseAbs().maxCoeff() * 1.000001));
  bool ok = round_err <= 1e-9 && zero.estimate.values().cwiseAbs().maxCoeff() == 0.0;

  double worst_ratio = 0.0;
  int cut_violations = 0;
  for (int n : {64, 128}) {
    for (int k : {2, 4, 8}) {
      for (double rho : {1.0, 4.0 * std::log(n) / n}) {
        auto w0 = cg::truth_graphon("random", k, 21);
        for (int rep = 0; rep < 20; ++rep) {
          std::uint64_t seed = rng();
          auto spec = cg::make_model_spec(w0, rho, n, seed);
          auto theta = cg::sample_theta(spec, cg::sample_latents(n, seed));
          auto a = cg::sample_adjacency(theta, seed + 1);
          auto est = cg::estimate_svt(a, cg::SvtConfig::from_graph(a)).estimate;
          Matrix d = est.values() - theta.values();
          worst_ratio = std::max(worst_ratio, d.norm() / (n * std::sqrt(rho * k / n)));
          Eigen::SelfAdjointEigenSolver<Matrix> ed(d, Eigen::EigenvaluesOnly);
          double op = ed.eigenvalues().cwiseAbs().maxCoeff();
          double cut = cg::matrix_cut_norm_heuristic(d, 8, rep).value;
          cut_violations += cut > op / n + 1e-12;
        }
      }
    }
  }
  ok &= worst_ratio <= 8.0 && cut_violations == 0;
  return {ok, "round trip " + fmt(round_err) + ", above-norm rank " + std::to_string(zero.rank) +
                  ", max Frobenius ratio " + fmt(worst_ratio) + ", cut/operator violations " +
                  std::to_string(cut_violations)};
}

Outcome restricted_ls() {
  cg::CounterRng rng = cg::CounterRng::stream(2024, {7});
  int match = 0;
  int beats = 0;
  double closed_err = 0.0;
  for (int t = 0; t < 50; ++t) {
    Matrix a = Matrix::Zero(5, 5);
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) a(i, j) = a(j, i) = rng.bernoulli(0.5) ? 1.0 : 0.0;
    }
    auto g = cg::AdjacencyMatrix::from(a);
    double exact = cg::exact_restricted_ls(g, 2, 1.0).objective;
    double alt = cg::estimate_restricted_ls(g, 2, 1.0, 16, t).objective;
    match += std::abs(alt - exact) <= 1e-12;
    beats += alt < exact - 1e-12;
    double mean = a.sum() / 20.0;
    closed_err = std::max(closed_err,
                          std::abs(cg::estimate_restricted_ls(g, 1, 1.0, 1, t).q(0, 0) - mean));
  }
  return {match >= 45 && beats == 0 && closed_err <= 1e-12,
          "matches " + std::to_string(match) + "/50, beats exact " + std::to_string(beats) +
              ", k=1 error " + fmt(closed_err)};
}

Outcome regularity() {
  cg::CounterRng rng = cg::CounterRng::stream(2024, {8});
  int bound_fail = 0;
  int energy_fail = 0;
  for (int t = 0; t < 100; ++t) {
    Matrix u = uniform_matrix(8, 8, rng, 0.0, 1.0);
    Matrix q = (u + u.transpose()) / 2.0;
    Vector w = uniform_matrix(8, 1, rng, 0.05, 1.0);
    auto g = cg::StepGraphon::create(q, w / w.sum());
    for (int q0 : {4, 16}) {
      auto r = cg::weak_regularity_approx(g, q0);
      const auto& d = r.decomposition;
      auto residual = cg::Kernel::create(g.values() - r.approximation.values(), g.weights(),
                                         g.weights());
      double cut = cg::step_kernel_cut_norm_exact(residual).value;
      bound_fail += cut > 1.0 / std::sqrt(static_cast<double>(d.k0)) + 1e-12;
      for (const auto& term : d.terms) {
        energy_fail +=
            term.energy_before - term.energy_after < term.residual_cut * term.residual_cut - 1e-12;
      }
    }
  }
  return {bound_fail == 0 && energy_fail == 0,
          "bound failures " + std::to_string(bound_fail) + "/200, energy failures " +
              std::to_string(energy_fail)};
}

Outcome packings() {
  auto fam = cg::matrix_packing(64, 1.0, 31);
  const double eps = fam.epsilon;
  bool arithmetic = fam.kl_budget <= std::log(static_cast<double>(fam.size())) / 32.0;
  int outside = 0;
  for (const auto& m : fam.matrices) {
    std::set<double> values;
    std::set<std::vector<double>> rows;
    for (int i = 0; i < 64; ++i) {
      std::vector<double> row;
      for (int j = 0; j < 64; ++j) {
        if (i != j) values.insert(m(i, j));
        row.push_back(m(i, j));
      }
    }
    for (double v : values) outside += v < 0.0 || v > 1.0;
    outside += values.size() > 2;
    for (double v : values) outside += std::abs(std::abs(v - 0.5) - eps) > 1e-15;
  }
  cg::CounterRng rng = cg::CounterRng::stream(2024, {9});
  int weak_pairs = 0;
  double min_cut = 1e300;
  for (int t = 0; t < 20; ++t) {
    std::size_t i = rng.below(fam.size());
    std::size_t j = rng.below(fam.size() - 1);
    if (j >= i) ++j;
    double cut = cg::matrix_cut_norm_heuristic(fam.matrices[i].values() - fam.matrices[j].values(),
                                               16, t)
                     .value;
    min_cut = std::min(min_cut, cut);
    weak_pairs += cut < eps / 14.0;
  }

  auto gfam = cg::graphon_packing(64, 4096, 1.0, 32);
  const int k1 = 32;
  int kl_fail = 0;
  int zero_lower = 0;
  auto scaled = [&](const cg::SignVector& s) {
    std::vector<double> u;
    for (int x : s) u.push_back(gfam.epsilon * x);
    return u;
  };
  int pairs = 0;
  for (std::size_t i = 0; i < gfam.size(); ++i) {
    for (std::size_t j = i + 1; j < gfam.size(); ++j) {
      auto u = scaled(gfam.codes[i]);
      auto v = scaled(gfam.codes[j]);
      kl_fail += cg::latent_kl_exact(u, v, k1, gfam.mk, 4096) >
                 cg::kl_bound(u, v, 4096, gfam.epsilon, k1);
      if (pairs < 10) {
        zero_lower += !(cg::delta_cut_lower(gfam.graphons[i], gfam.graphons[j],
                                            cg::standard_motifs()) > 0.0);
        ++pairs;
      }
    }
  }
  bool ok = arithmetic && outside == 0 && weak_pairs == 0 && kl_fail == 0 && zero_lower == 0 &&
            pairs == 10;
  return {ok, "matrix family |Omega|=" + std::to_string(fam.size()) + " eps=" + fmt(eps) +
                  " kl=" + fmt(fam.kl_budget) + " <= " +
                  fmt(std::log(static_cast<double>(fam.size())) / 32.0) + ", min pair cut " +
                  fmt(min_cut) + " vs eps/14 " + fmt(eps / 14.0) + "; graphon family kl failures " +
                  std::to_string(kl_fail) + ", zero motif bounds " + std::to_string(zero_lower) +
                  "/" + std::to_string(pairs)};
}

Outcome tiny_exactness() {
  cg::CounterRng rng = cg::CounterRng::stream(2024, {10});
  auto random_six = [&]() {
    std::vector<int> sizes;
    int left = 6;
    while (left > 0) {
      int s = 1 + static_cast<int>(rng.below(std::min(left, 3)));
      sizes.push_back(s);
      left -= s;
    }
    int k = static_cast<int>(sizes.size());
    Vector w(k);
    for (int a = 0; a < k; ++a) w(a) = sizes[a] / 6.0;
    Matrix q = uniform_matrix(k, k, rng, 0.0, 1.0);
    return cg::StepGraphon::create((q + q.transpose()) / 2.0, w);
  };
  int mismatches = 0;
  for (int t = 0; t < 50; ++t) {
    auto a = random_six();
    auto b = random_six();
    // Pairs whose smallest common refinement is exactly six steps.
    while (cg::default_blowup(a, b) != 6) {
      a = random_six();
      b = random_six();
    }
    cg::DistanceOptions opt;
    opt.seed = t;
    double up = cg::delta_upper(a, b, cg::Metric::Cut, opt).upper;
    mismatches += std::abs(up - cg::delta_exact_tiny(a, b, cg::Metric::Cut)) > 1e-6;
  }
  const double eps = 0.1;
  Matrix q(2, 2);
  q << 0.5 + eps, 0.5 - eps, 0.5 - eps, 0.5 + eps;
  auto w2 = cg::StepGraphon::create(q, Vector::Constant(2, 0.5));
  auto est = cg::delta_upper(cg::StepGraphon::constant(0.5), w2, cg::Metric::Cut);
  bool example = std::abs(est.upper - 0.1) <= 1e-6;
  return {mismatches == 0 && example,
          std::to_string(mismatches) + "/50 random pairs differ; two-block example upper " +
              fmt(est.upper) + " (expected 0.1), motif lower " + fmt(est.lower)};
}

Outcome reproducibility() {
  cg::ExperimentConfig cfg;
  cfg.ns = {24, 40};
  cfg.ks = {2, 3};
  cfg.rhos = {1.0, 0.5};
  cfg.estimators = {cg::EstimatorKind::Adjacency, cg::EstimatorKind::Mean, cg::EstimatorKind::Svt,
                    cg::EstimatorKind::Rls};
  cfg.metrics = {cg::RiskMetric::Cut,      cg::RiskMetric::L1,      cg::RiskMetric::L2,
                 cg::RiskMetric::Frobenius, cg::RiskMetric::DeltaCut, cg::RiskMetric::DeltaL1,
                 cg::RiskMetric::DeltaL2};
  cfg.reps = 3;
  cfg.seed = 77;
  auto read = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const std::string p1 = "acceptance_risk_1.csv";
  const std::string p2 = "acceptance_risk_2.csv";
  cg::emit(cg::run_risk_experiment(cfg), "csv", p1);
  cg::emit(cg::run_risk_experiment(cfg), "csv", p2);
  std::string a = read(p1);
  std::string b = read(p2);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
  return {a == b && !a.empty(), std::to_string(a.size()) + " bytes, identical: " +
                                    (a == b ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 cut-norm heuristic vs exact", heuristic_vs_exact},
      {"2 sandwich inequality", sandwich},
      {"3 Khintchine/q-subset bracket", kernel_bracket},
      {"4 Bernstein constant", bernstein_constant},
      {"5 rate slopes", rate_slopes},
      {"6 SVT properties", svt_properties},
      {"7 restricted least squares", restricted_ls},
      {"8 weak regularity certificate", regularity},
      {"9 packings", packings},
      {"10 tiny cut-distance exactness", tiny_exactness},
      {"11 reproducibility", reproducibility},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << ": " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
