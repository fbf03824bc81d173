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

#include "cutgraphon/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

#include "cutgraphon/cut_distance.hpp"
#include "cutgraphon/cut_norm.hpp"
#include "cutgraphon/error.hpp"
#include "cutgraphon/estimators.hpp"
#include "cutgraphon/rng.hpp"
#include "cutgraphon/samplers.hpp"

namespace cutgraphon {
namespace {

constexpr std::uint64_t kTruthTag = 0x7472757468ULL;
constexpr std::uint64_t kCellTag = 0x63656c6cULL;
constexpr int kExactRiskCut = 16;

// Starting permutation that sends every vertex to a refined step of its own
// latent block while room remains; the rest fill the free steps in latent
// order.
std::vector<int> latent_hint(const LatentSample& xi, const std::vector<int>& labels,
                             const StepGraphon& lifted, const StepGraphon& truth, int m) {
  std::vector<int> vertex_of = refinement_assignment(lifted.weights(), m);
  std::vector<int> block_of = refinement_assignment(truth.weights(), m);
  std::vector<int> pieces(m);
  std::iota(pieces.begin(), pieces.end(), 0);
  std::stable_sort(pieces.begin(), pieces.end(),
                   [&](int p, int q) { return xi.xi[vertex_of[p]] < xi.xi[vertex_of[q]]; });
  std::vector<std::vector<int>> free_by_block(truth.steps());
  for (int q = m - 1; q >= 0; --q) free_by_block[block_of[q]].push_back(q);
  std::vector<int> hint(m, -1);
  std::vector<int> leftover;
  for (int p : pieces) {
    auto& slots = free_by_block[labels[vertex_of[p]]];
    if (slots.empty()) {
      leftover.push_back(p);
      continue;
    }
    hint[p] = slots.back();
    slots.pop_back();
  }
  std::vector<int> remaining;
  for (auto& slots : free_by_block) {
    for (auto it = slots.rbegin(); it != slots.rend(); ++it) remaining.push_back(*it);
  }
  std::sort(remaining.begin(), remaining.end());
  for (std::size_t i = 0; i < leftover.size(); ++i) hint[leftover[i]] = remaining[i];
  return hint;
}

ProbMatrix run_estimator(EstimatorKind kind, const AdjacencyMatrix& a, int k, double rho,
                         const ExperimentConfig& cfg, std::uint64_t seed) {
  switch (kind) {
    case EstimatorKind::Adjacency:
      return estimate_adjacency(a);
    case EstimatorKind::Mean:
      return estimate_mean(a).estimate;
    case EstimatorKind::Svt:
      return estimate_svt(a, SvtConfig::from_graph(a, cfg.svt_multiplier)).estimate;
    case EstimatorKind::Rls:
      return block_matrix(estimate_restricted_ls(a, std::min(k, a.size()), rho, cfg.restarts, seed));
  }
  throw ValidationError("unknown estimator");
}

struct Truth {
  const LatentSample& xi;
  const std::vector<int>& labels;
  const ProbMatrix& theta;
  const StepGraphon& f0;
};

double risk(RiskMetric metric, const ProbMatrix& est, const Truth& truth,
            const ExperimentConfig& cfg, std::uint64_t seed) {
  const Matrix d = est.values() - truth.theta.values();
  const double n = static_cast<double>(d.rows());
  switch (metric) {
    case RiskMetric::Cut:
      if (d.rows() <= kExactRiskCut) return matrix_cut_norm_exact(d).value;
      return matrix_cut_norm_heuristic(d, cfg.cut_restarts, seed).value;
    case RiskMetric::L1:
      return d.cwiseAbs().sum() / (n * n);
    case RiskMetric::L2:
      return d.norm() / n;
    case RiskMetric::Frobenius:
      return d.norm();
    case RiskMetric::DeltaCut:
    case RiskMetric::DeltaL1:
    case RiskMetric::DeltaL2: {
      StepGraphon lifted = lift_to_graphon(est);
      DistanceOptions opt;
      opt.blowup = cfg.blowup > 0 ? cfg.blowup : default_blowup(lifted, truth.f0);
      opt.restarts = cfg.distance_restarts;
      opt.seed = seed;
      opt.cut_restarts = cfg.cut_restarts;
      opt.plain_starts = false;
      opt.hint = latent_hint(truth.xi, truth.labels, lifted, truth.f0, opt.blowup);
      Metric m = metric == RiskMetric::DeltaCut ? Metric::Cut
                 : metric == RiskMetric::DeltaL1 ? Metric::L1
                                                 : Metric::L2;
      return delta_upper(lifted, truth.f0, m, opt).upper;
    }
  }
  throw ValidationError("unknown metric");
}

double log_axis(const RiskRow& r, SlopeAxis axis, SlopeTransform transform) {
  double x = axis == SlopeAxis::N ? r.n : axis == SlopeAxis::K ? r.k : r.rho;
  if (transform == SlopeTransform::KOverLogK) {
    if (x < 2.0) throw ValidationError("slope: k / log k needs values of at least 2");
    x /= std::log(x);
  }
  if (!(x > 0.0)) throw ValidationError("slope: axis values must be positive");
  return std::log(x);
}

}  // namespace

Regime parse_regime(const std::string& name) {
  for (Regime r : {Regime::GraphonCut, Regime::MatrixCut, Regime::Frobenius, Regime::MatrixL1,
                   Regime::L1Graphon, Regime::L2Graphon}) {
    if (name == to_string(r)) return r;
  }
  throw ValidationError("unknown regime '" + name + "'");
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::GraphonCut:
      return "graphon_cut";
    case Regime::MatrixCut:
      return "matrix_cut";
    case Regime::Frobenius:
      return "frobenius";
    case Regime::MatrixL1:
      return "matrix_l1";
    case Regime::L1Graphon:
      return "graphon_l1";
    case Regime::L2Graphon:
      return "graphon_l2";
  }
  return "unknown";
}

double rate_formula(Regime regime, int n, int k, double rho) {
  if (n < 1 || k < 1) throw ValidationError("rate: n and k must be positive");
  if (!(rho > 0.0 && rho <= 1.0)) throw ValidationError("rate: rho must lie in (0, 1]");
  const double nn = n;
  const double kk = std::min(k, n);
  if (kk < 2.0) return std::min(std::sqrt(rho) / nn, rho);
  const double lk = std::log(kk);
  double v = 0.0;
  switch (regime) {
    case Regime::GraphonCut: {
      double agnostic = std::sqrt(kk / (nn * lk));
      if (n >= 3) agnostic = std::min(agnostic, 1.0 / std::sqrt(std::log(nn)));
      v = rho * agnostic + std::sqrt(rho / nn);
      break;
    }
    case Regime::MatrixCut:
      v = std::sqrt(rho / nn);
      break;
    case Regime::Frobenius:
    case Regime::MatrixL1:
      v = std::sqrt(rho * lk / nn) + std::sqrt(rho) * kk / nn;
      break;
    case Regime::L1Graphon:
      v = rho * std::sqrt(kk / nn) + std::sqrt(rho) * kk / nn + std::sqrt(rho * lk / nn);
      break;
    case Regime::L2Graphon:
      v = std::sqrt(rho) * kk / nn + std::sqrt(rho * lk / nn) + rho * std::pow(kk / nn, 0.25);
      break;
  }
  return std::min(v, rho);
}

EstimatorKind parse_estimator(const std::string& name) {
  for (EstimatorKind e : {EstimatorKind::Adjacency, EstimatorKind::Mean, EstimatorKind::Svt,
                          EstimatorKind::Rls}) {
    if (name == to_string(e)) return e;
  }
  throw ValidationError("unknown estimator '" + name + "'");
}

const char* to_string(EstimatorKind estimator) {
  switch (estimator) {
    case EstimatorKind::Adjacency:
      return "adjacency";
    case EstimatorKind::Mean:
      return "mean";
    case EstimatorKind::Svt:
      return "svt";
    case EstimatorKind::Rls:
      return "rls";
  }
  return "unknown";
}

RiskMetric parse_risk_metric(const std::string& name) {
  for (RiskMetric m : {RiskMetric::Cut, RiskMetric::L1, RiskMetric::L2, RiskMetric::Frobenius,
                       RiskMetric::DeltaCut, RiskMetric::DeltaL1, RiskMetric::DeltaL2}) {
    if (name == to_string(m)) return m;
  }
  throw ValidationError("unknown metric '" + name + "'");
}

const char* to_string(RiskMetric metric) {
  switch (metric) {
    case RiskMetric::Cut:
      return "cut";
    case RiskMetric::L1:
      return "l1";
    case RiskMetric::L2:
      return "l2";
    case RiskMetric::Frobenius:
      return "frobenius";
    case RiskMetric::DeltaCut:
      return "delta_cut";
    case RiskMetric::DeltaL1:
      return "delta_l1";
    case RiskMetric::DeltaL2:
      return "delta_l2";
  }
  return "unknown";
}

double theory_envelope(RiskMetric metric, int n, int k, double rho) {
  switch (metric) {
    case RiskMetric::Cut:
      return rate_formula(Regime::MatrixCut, n, k, rho);
    case RiskMetric::L1:
      return rate_formula(Regime::MatrixL1, n, k, rho);
    case RiskMetric::L2:
      return rate_formula(Regime::Frobenius, n, k, rho);
    case RiskMetric::Frobenius:
      return n * rate_formula(Regime::Frobenius, n, k, rho);
    case RiskMetric::DeltaCut:
      return rate_formula(Regime::GraphonCut, n, k, rho);
    case RiskMetric::DeltaL1:
      return rate_formula(Regime::L1Graphon, n, k, rho);
    case RiskMetric::DeltaL2:
      return rate_formula(Regime::L2Graphon, n, k, rho);
  }
  return 0.0;
}

StepGraphon truth_graphon(const std::string& family, int k, std::uint64_t seed) {
  if (k < 1) throw ValidationError("truth graphon: k must be positive");
  CounterRng rng = CounterRng::stream(seed, {kTruthTag, static_cast<std::uint64_t>(k)});
  Matrix q(k, k);
  for (int a = 0; a < k; ++a) {
    for (int b = a; b < k; ++b) {
      double v = 0.0;
      if (family == "random") {
        v = rng.uniform();
      } else if (family == "binary") {
        v = rng.bernoulli(0.5) ? 1.0 : 0.0;
      } else if (family == "assortative") {
        v = a == b ? 0.75 : 0.25;
      } else if (family == "constant") {
        v = 0.5;
      } else {
        throw ValidationError("unknown graphon family '" + family + "'");
      }
      q(a, b) = v;
      q(b, a) = v;
    }
  }
  return StepGraphon::create(std::move(q), Vector::Constant(k, 1.0 / k));
}

void ExperimentConfig::validate() const {
  if (ns.empty() || ks.empty() || rhos.empty()) throw ValidationError("config: empty grid");
  if (estimators.empty() || metrics.empty()) {
    throw ValidationError("config: no estimator or metric selected");
  }
  if (reps < 1) throw ValidationError("config: reps must be at least 1");
  for (int n : ns) {
    if (n < 2) throw ValidationError("config: n must be at least 2");
  }
  for (int k : ks) {
    if (k < 1) throw ValidationError("config: k must be positive");
  }
  for (double r : rhos) {
    if (!(r > 0.0 && r <= 1.0)) throw ValidationError("config: rho must lie in (0, 1]");
  }
  if (restarts < 1 || cut_restarts < 1 || distance_restarts < 0 || blowup < 0) {
    throw ValidationError("config: invalid search budget");
  }
  if (!(svt_multiplier > 0.0)) throw ValidationError("config: svt_c must be positive");
}

RiskReport run_risk_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  RiskReport report;
  for (int n : cfg.ns) {
    for (int k : cfg.ks) {
      const StepGraphon w0 = truth_graphon(cfg.family, k, cfg.seed);
      for (double rho : cfg.rhos) {
        const StepGraphon f0 = w0.scaled(rho);
        const std::size_t ne = cfg.estimators.size();
        const std::size_t nm = cfg.metrics.size();
        std::vector<std::vector<double>> samples(ne * nm);
        for (int rep = 0; rep < cfg.reps; ++rep) {
          CounterRng base = CounterRng::stream(
              cfg.seed, {kCellTag, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k),
                         std::bit_cast<std::uint64_t>(rho), static_cast<std::uint64_t>(rep)});
          LatentSample xi;
          std::vector<int> labels;
          std::optional<ProbMatrix> theta;
          std::optional<AdjacencyMatrix> adj;
          try {
            xi = sample_latents(n, base.at(0));
            ModelSpec spec = make_model_spec(w0, rho, n, base.at(0));
            labels = assign_steps(w0, xi);
            theta = sample_theta(spec, xi);
            adj = sample_adjacency(*theta, base.at(1));
          } catch (const std::exception& e) {
            report.failures.push_back({n, k, rho, "*", rep, e.what()});
            continue;
          }
          Truth truth{xi, labels, *theta, f0};
          for (std::size_t ei = 0; ei < ne; ++ei) {
            try {
              ProbMatrix est = run_estimator(cfg.estimators[ei], *adj, k, rho, cfg, base.at(2));
              std::vector<double> values(nm);
              for (std::size_t mi = 0; mi < nm; ++mi) {
                values[mi] = risk(cfg.metrics[mi], est, truth, cfg, base.at(3));
              }
              for (std::size_t mi = 0; mi < nm; ++mi) samples[ei * nm + mi].push_back(values[mi]);
            } catch (const std::exception& e) {
              report.failures.push_back({n, k, rho, to_string(cfg.estimators[ei]), rep, e.what()});
            }
          }
        }
        for (std::size_t ei = 0; ei < ne; ++ei) {
          for (std::size_t mi = 0; mi < nm; ++mi) {
            const std::vector<double>& v = samples[ei * nm + mi];
            RiskRow row;
            row.n = n;
            row.k = k;
            row.rho = rho;
            row.estimator = to_string(cfg.estimators[ei]);
            row.metric = to_string(cfg.metrics[mi]);
            row.reps = static_cast<int>(v.size());
            row.theory = theory_envelope(cfg.metrics[mi], n, k, rho);
            if (v.empty()) {
              row.mean_risk = std::nan("");
              row.std_error = std::nan("");
            } else {
              double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
              double ss = 0.0;
              for (double x : v) ss += (x - mean) * (x - mean);
              double sd = v.size() > 1 ? std::sqrt(ss / (v.size() - 1)) : 0.0;
              row.mean_risk = mean;
              row.std_error = sd / std::sqrt(static_cast<double>(v.size()));
            }
            report.rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  return report;
}

SlopeFit fit_rate_slope(const std::vector<RiskRow>& rows, SlopeAxis axis, SlopeTransform transform) {
  std::vector<double> xs;
  std::vector<double> ys;
  std::set<double> distinct;
  for (const RiskRow& r : rows) {
    if (!(r.mean_risk > 0.0)) throw ValidationError("slope: risks must be positive");
    xs.push_back(log_axis(r, axis, transform));
    ys.push_back(std::log(r.mean_risk));
    distinct.insert(xs.back());
  }
  if (distinct.size() < 4) throw ValidationError("slope: need at least four distinct axis values");
  const double m = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / m;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / m;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += e * e;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

std::vector<RiskRow> select_rows(const RiskReport& report, const std::string& estimator,
                                 const std::string& metric) {
  std::vector<RiskRow> out;
  for (const RiskRow& r : report.rows) {
    if (r.estimator == estimator && r.metric == metric) out.push_back(r);
  }
  return out;
}

double bernstein_cut_envelope(const ProbMatrix& theta) {
  const double n = theta.size();
  return 12.0 * std::sqrt((theta.values().cwiseAbs().sum() + n) / (n * n * n));
}

}  // namespace cutgraphon
