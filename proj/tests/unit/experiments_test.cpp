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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cutgraphon/error.hpp"
#include "cutgraphon/experiments.hpp"

namespace cg = cutgraphon;

namespace {

cg::ExperimentConfig small_config() {
  cg::ExperimentConfig cfg;
  cfg.ns = {24};
  cfg.ks = {2};
  cfg.rhos = {1.0};
  cfg.estimators = {cg::EstimatorKind::Adjacency, cg::EstimatorKind::Mean, cg::EstimatorKind::Svt,
                    cg::EstimatorKind::Rls};
  cfg.metrics = {cg::RiskMetric::Cut, cg::RiskMetric::L1, cg::RiskMetric::L2,
                 cg::RiskMetric::Frobenius, cg::RiskMetric::DeltaL1};
  cfg.reps = 1;
  cfg.seed = 5;
  return cfg;
}

std::string csv_of(const cg::RiskReport& r) {
  std::ostringstream out;
  cg::write_csv(out, r);
  return out.str();
}

}  // namespace

TEST(RateFormula, FrobeniusExample) {
  EXPECT_NEAR(cg::rate_formula(cg::Regime::Frobenius, 100, 4, 1.0),
              std::sqrt(std::log(4.0) / 100) + 0.04, 1e-15);
  EXPECT_NEAR(cg::rate_formula(cg::Regime::Frobenius, 100, 4, 1.0), 0.15774, 1e-5);
}

TEST(RateFormula, GraphonCutAgnosticBranch) {
  const int n = 1000;
  EXPECT_NEAR(cg::rate_formula(cg::Regime::GraphonCut, n, n, 1.0),
              1.0 / std::sqrt(std::log(n)) + std::sqrt(1.0 / n), 1e-15);
  // Beyond k = n the agnostic branch stays.
  EXPECT_EQ(cg::rate_formula(cg::Regime::GraphonCut, n, 5 * n, 1.0),
            cg::rate_formula(cg::Regime::GraphonCut, n, n, 1.0));
}

TEST(RateFormula, SparseRegimeReturnsRho) {
  for (auto r : {cg::Regime::GraphonCut, cg::Regime::MatrixCut, cg::Regime::Frobenius,
                 cg::Regime::L1Graphon, cg::Regime::L2Graphon}) {
    EXPECT_DOUBLE_EQ(cg::rate_formula(r, 200, 8, 1.0 / 400), 1.0 / 400) << cg::to_string(r);
  }
}

TEST(RateFormula, SingleBlock) {
  EXPECT_DOUBLE_EQ(cg::rate_formula(cg::Regime::Frobenius, 100, 1, 0.25), 0.5 / 100);
  EXPECT_THROW(cg::rate_formula(cg::Regime::Frobenius, 100, 0, 0.25), cg::ValidationError);
  EXPECT_THROW(cg::parse_regime("sup"), cg::ValidationError);
  EXPECT_EQ(cg::parse_regime(cg::to_string(cg::Regime::L1Graphon)), cg::Regime::L1Graphon);
}

TEST(Envelope, MetricMapping) {
  EXPECT_EQ(cg::theory_envelope(cg::RiskMetric::Cut, 64, 4, 1.0),
            cg::rate_formula(cg::Regime::MatrixCut, 64, 4, 1.0));
  EXPECT_EQ(cg::theory_envelope(cg::RiskMetric::Frobenius, 64, 4, 1.0),
            64 * cg::rate_formula(cg::Regime::Frobenius, 64, 4, 1.0));
  EXPECT_EQ(cg::theory_envelope(cg::RiskMetric::DeltaCut, 64, 4, 1.0),
            cg::rate_formula(cg::Regime::GraphonCut, 64, 4, 1.0));
}

TEST(RiskExperiment, DeterministicReport) {
  auto cfg = small_config();
  auto a = cg::run_risk_experiment(cfg);
  auto b = cg::run_risk_experiment(cfg);
  EXPECT_TRUE(a.failures.empty());
  EXPECT_EQ(a.rows.size(), 20u);
  EXPECT_EQ(csv_of(a), csv_of(b));
  for (const auto& r : a.rows) {
    EXPECT_EQ(r.reps, 1);
    EXPECT_EQ(r.std_error, 0.0);
    EXPECT_GE(r.mean_risk, 0.0);
  }
  cfg.seed = 6;
  EXPECT_NE(csv_of(cg::run_risk_experiment(cfg)), csv_of(a));
}

TEST(RiskExperiment, MeanEstimatorOnErdosRenyi) {
  cg::ExperimentConfig cfg;
  cfg.ns = {64};
  cfg.ks = {1};
  cfg.rhos = {1.0};
  cfg.family = "constant";
  cfg.estimators = {cg::EstimatorKind::Mean};
  cfg.metrics = {cg::RiskMetric::L1};
  cfg.reps = 100;
  auto rows = cg::run_risk_experiment(cfg).rows;
  ASSERT_EQ(rows.size(), 1u);
  const double scale = std::sqrt(2 * 0.5 / (64.0 * 63.0));
  EXPECT_GE(rows[0].mean_risk, scale / 2.0);
  EXPECT_LE(rows[0].mean_risk, scale * 2.0);
}

TEST(RiskExperiment, AdjacencyCutWithinExplicitEnvelope) {
  cg::ExperimentConfig cfg;
  cfg.ns = {16, 48};
  cfg.ks = {3};
  cfg.rhos = {1.0, 0.25};
  cfg.estimators = {cg::EstimatorKind::Adjacency};
  cfg.metrics = {cg::RiskMetric::Cut};
  cfg.reps = 10;
  for (const auto& r : cg::run_risk_experiment(cfg).rows) {
    EXPECT_LE(r.mean_risk, 24.0 * std::sqrt(r.rho / r.n));
  }
}

TEST(RiskExperiment, BlockCountCappedAtN) {
  auto cfg = small_config();
  cfg.estimators = {cg::EstimatorKind::Rls};
  cfg.ks = {2, 30};
  auto report = cg::run_risk_experiment(cfg);
  EXPECT_EQ(report.rows.size(), 2u * cfg.metrics.size());
  EXPECT_TRUE(report.failures.empty());
  cfg.restarts = 0;
  EXPECT_THROW(cg::run_risk_experiment(cfg), cg::ValidationError);
}

TEST(Slope, ExactPowerLaw) {
  std::vector<cg::RiskRow> rows;
  for (int n : {16, 32, 64, 128, 256}) {
    cg::RiskRow r;
    r.n = n;
    r.k = 2;
    r.rho = 1.0;
    r.mean_risk = 3.0 / std::sqrt(n);
    rows.push_back(r);
  }
  auto fit = cg::fit_rate_slope(rows, cg::SlopeAxis::N, cg::SlopeTransform::Log);
  EXPECT_NEAR(fit.slope, -0.5, 1e-9);
  EXPECT_NEAR(fit.r2, 1.0, 1e-12);
  rows.pop_back();
  rows.pop_back();
  EXPECT_THROW(cg::fit_rate_slope(rows, cg::SlopeAxis::N, cg::SlopeTransform::Log),
               cg::ValidationError);
}

TEST(Slope, KOverLogK) {
  std::vector<cg::RiskRow> rows;
  for (int k : {4, 8, 16, 32}) {
    cg::RiskRow r;
    r.n = 256;
    r.k = k;
    r.rho = 1.0;
    r.mean_risk = 0.1 * std::sqrt(k / std::log(k));
    rows.push_back(r);
  }
  EXPECT_NEAR(cg::fit_rate_slope(rows, cg::SlopeAxis::K, cg::SlopeTransform::KOverLogK).slope, 0.5,
              1e-9);
}

TEST(Emit, HeaderAndEmptyReport) {
  EXPECT_EQ(std::string(cg::kCsvHeader), "n,k,rho,estimator,metric,mean_risk,stderr,reps,theory");
  const std::string path = ::testing::TempDir() + "empty_report.csv";
  cg::emit(cg::RiskReport{}, "csv", path);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), std::string(cg::kCsvHeader) + "\n");
  std::remove(path.c_str());
}

TEST(Emit, CsvRoundTrip) {
  auto report = cg::run_risk_experiment(small_config());
  std::stringstream s(csv_of(report));
  auto rows = cg::read_csv(s);
  ASSERT_EQ(rows.size(), report.rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].n, report.rows[i].n);
    EXPECT_EQ(rows[i].k, report.rows[i].k);
    EXPECT_EQ(rows[i].rho, report.rows[i].rho);
    EXPECT_EQ(rows[i].estimator, report.rows[i].estimator);
    EXPECT_EQ(rows[i].metric, report.rows[i].metric);
    EXPECT_EQ(rows[i].mean_risk, report.rows[i].mean_risk);
    EXPECT_EQ(rows[i].std_error, report.rows[i].std_error);
    EXPECT_EQ(rows[i].reps, report.rows[i].reps);
    EXPECT_EQ(rows[i].theory, report.rows[i].theory);
  }
}

TEST(Emit, SvgAndErrors) {
  cg::ExperimentConfig cfg = small_config();
  cfg.ns = {16, 24};
  cfg.estimators = {cg::EstimatorKind::Adjacency};
  auto report = cg::run_risk_experiment(cfg);
  std::ostringstream out;
  cg::write_svg(out, report);
  EXPECT_EQ(out.str().rfind("<svg", 0), 0u);
  EXPECT_NE(out.str().find("stroke-dasharray"), std::string::npos);
  EXPECT_NE(out.str().find("</svg>"), std::string::npos);
  EXPECT_THROW(cg::emit(report, "csv", "/nonexistent-dir/x.csv"), std::runtime_error);
  EXPECT_THROW(cg::emit(report, "pdf", ::testing::TempDir() + "x.pdf"), cg::ValidationError);
}

TEST(Config, ParsesRepeatedKeysAndLists) {
  std::istringstream in(
      "# grid\n"
      "n = 32\n"
      "n = 64, 128\n"
      "k=4\n"
      "rho=1\n"
      "rho=0.5\n"
      "estimator=adjacency,svt\n"
      "metric=cut\n"
      "metric=delta_cut\n"
      "reps=7\n"
      "seed=99\n"
      "svt_c=3.5\n"
      "family=binary\n");
  auto cfg = cg::parse_config(in);
  EXPECT_EQ(cfg.ns, (std::vector<int>{32, 64, 128}));
  EXPECT_EQ(cfg.ks, (std::vector<int>{4}));
  EXPECT_EQ(cfg.rhos, (std::vector<double>{1.0, 0.5}));
  EXPECT_EQ(cfg.estimators.size(), 2u);
  EXPECT_EQ(cfg.metrics.back(), cg::RiskMetric::DeltaCut);
  EXPECT_EQ(cfg.reps, 7);
  EXPECT_EQ(cfg.seed, 99u);
  EXPECT_EQ(cfg.svt_multiplier, 3.5);
  EXPECT_EQ(cfg.family, "binary");
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, Rejections) {
  std::istringstream bad_key("speed=3\n");
  EXPECT_THROW(cg::parse_config(bad_key), cg::ValidationError);
  std::istringstream bad_value("n=abc\n");
  EXPECT_THROW(cg::parse_config(bad_value), cg::ValidationError);
  std::istringstream twice("reps=2\nreps=3\n");
  EXPECT_THROW(cg::parse_config(twice), cg::ValidationError);
  std::istringstream no_rho("n=10\nk=2\n");
  EXPECT_THROW(cg::parse_config(no_rho).validate(), cg::ValidationError);
  std::istringstream bad_rho("n=10\nk=2\nrho=1.5\n");
  EXPECT_THROW(cg::parse_config(bad_rho).validate(), cg::ValidationError);
}

TEST(Bernstein, EnvelopeFormula) {
  cg::Matrix m = cg::Matrix::Constant(4, 4, 0.5);
  m.diagonal().setZero();
  EXPECT_NEAR(cg::bernstein_cut_envelope(cg::ProbMatrix::from(m)), 12.0 * std::sqrt((6.0 + 4) / 64.0),
              1e-15);
}
