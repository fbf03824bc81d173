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

// Monte Carlo risk harness: grids over (n, k, rho), estimator and metric
// sweeps, reference rate curves, slope fits, CSV and SVG output.

#ifndef CUTGRAPHON_EXPERIMENTS_HPP_
#define CUTGRAPHON_EXPERIMENTS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cutgraphon/kernel_core.hpp"

namespace cutgraphon {

enum class Regime { GraphonCut, MatrixCut, Frobenius, MatrixL1, L1Graphon, L2Graphon };

Regime parse_regime(const std::string& name);
const char* to_string(Regime regime);

// Rate with unit constants, capped at rho. k = 1 gives sqrt(rho) / n for
// every regime; k > n is treated as k = n.
double rate_formula(Regime regime, int n, int k, double rho);

enum class EstimatorKind { Adjacency, Mean, Svt, Rls };
// Matrix metrics compare estimates with theta directly: cut (normalized cut
// norm), l1 (|.|_1 / n^2), l2 (|.|_F / n) and frobenius (|.|_F). The delta_*
// metrics compare the lifted estimate with rho * W0 up to relabeling.
enum class RiskMetric { Cut, L1, L2, Frobenius, DeltaCut, DeltaL1, DeltaL2 };

EstimatorKind parse_estimator(const std::string& name);
const char* to_string(EstimatorKind estimator);
RiskMetric parse_risk_metric(const std::string& name);
const char* to_string(RiskMetric metric);

// Reference curve drawn next to each metric; `frobenius` is n times the
// Frobenius rate.
double theory_envelope(RiskMetric metric, int n, int k, double rho);

// Truth graphons: `random` (iid uniform block values), `binary` (iid 0/1
// block values), `assortative` (0.75 on the diagonal, 0.25 off it) or
// `constant` (1/2 everywhere), all with k equal steps. Depends only on (family, k, seed).
StepGraphon truth_graphon(const std::string& family, int k, std::uint64_t seed);

struct ExperimentConfig {
  std::vector<int> ns;
  std::vector<int> ks;
  std::vector<double> rhos;
  std::vector<EstimatorKind> estimators;
  std::vector<RiskMetric> metrics;
  int reps = 10;
  std::uint64_t seed = 1;
  // Restricted least-squares restarts.
  int restarts = 4;
  // Random restarts of the permutation search for delta_* metrics.
  int distance_restarts = 0;
  int cut_restarts = 8;
  // Refinement size for delta_* metrics; 0 picks the default.
  int blowup = 0;
  double svt_multiplier = 2.1;
  std::string family = "random";
  std::string out;

  // Checks grids non-empty, reps >= 1, rho in (0, 1], n >= 2, k >= 1.
  void validate() const;
};

// Parses key=value lines. Keys n, k, rho, estimator and metric may repeat
// or hold comma-separated lists; blank lines and '#' comments are ignored.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

struct RiskRow {
  int n = 0;
  int k = 0;
  double rho = 0.0;
  std::string estimator;
  std::string metric;
  double mean_risk = 0.0;
  // Sample standard deviation over sqrt(reps).
  double std_error = 0.0;
  int reps = 0;
  double theory = 0.0;
};

struct CellFailure {
  int n = 0;
  int k = 0;
  double rho = 0.0;
  std::string estimator;
  int rep = 0;
  std::string message;
};

struct RiskReport {
  std::vector<RiskRow> rows;
  std::vector<CellFailure> failures;
};

// Deterministic given the config: each (n, k, rho, rep) draws from its own
// stream of `seed`, so adding grid points leaves other cells unchanged.
// Failures inside a replicate are recorded and the run moves on.
RiskReport run_risk_experiment(const ExperimentConfig& config);

enum class SlopeAxis { N, K, Rho };
enum class SlopeTransform { Log, KOverLogK };

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Least squares of log(mean_risk) on log(transform(axis)). Needs at least
// four distinct axis values.
SlopeFit fit_rate_slope(const std::vector<RiskRow>& rows, SlopeAxis axis,
                        SlopeTransform transform = SlopeTransform::Log);

// Rows matching estimator and metric names.
std::vector<RiskRow> select_rows(const RiskReport& report, const std::string& estimator,
                                 const std::string& metric);

// 12 sqrt((|theta|_1 + n) / n^3): bound on the expected cut norm of A - theta.
double bernstein_cut_envelope(const ProbMatrix& theta);

inline constexpr const char* kCsvHeader = "n,k,rho,estimator,metric,mean_risk,stderr,reps,theory";

void write_csv(std::ostream& out, const RiskReport& report);
std::vector<RiskRow> read_csv(std::istream& in);
// Log-log risk curves, one per (estimator, metric, k, rho) series against
// n, or against k when n is fixed; dashed lines are the theory envelopes.
void write_svg(std::ostream& out, const RiskReport& report);
// format is "csv" or "svg"; throws std::runtime_error on I/O failure.
void emit(const RiskReport& report, const std::string& format, const std::string& path);

}  // namespace cutgraphon

#endif  // CUTGRAPHON_EXPERIMENTS_HPP_
