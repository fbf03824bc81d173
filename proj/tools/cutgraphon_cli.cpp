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

// Command-line front end: sampling, estimation, norms, distances,
// regularity, packings and the Monte Carlo risk harness.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "cutgraphon/cut_distance.hpp"
#include "cutgraphon/cut_norm.hpp"
#include "cutgraphon/error.hpp"
#include "cutgraphon/estimators.hpp"
#include "cutgraphon/experiments.hpp"
#include "cutgraphon/kernel_core.hpp"
#include "cutgraphon/lower_bounds.hpp"
#include "cutgraphon/regularity.hpp"
#include "cutgraphon/rng.hpp"
#include "cutgraphon/samplers.hpp"

namespace cg = cutgraphon;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::string config;
};

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close() {
    stream().flush();
    if (!stream()) throw std::runtime_error("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return in;
}

cg::StepGraphon load_graphon(const std::string& path, bool unbounded) {
  auto in = open_input(path);
  return cg::read_stepgraphon(in, unbounded ? cg::ValueRange::Unbounded : cg::ValueRange::Bounded);
}

cg::Matrix load_matrix(const std::string& path) {
  auto in = open_input(path);
  return cg::read_matrix(in);
}

void kv(std::ostream& out, const std::string& key, double value) {
  out << key << '=' << cg::format_double(value) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graphon and probability-matrix estimation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Base seed");
  app.add_option("--out", g.out, "Output file (risk: output directory)");
  app.add_option("--config", g.config, "Experiment config file (key=value)");

  // sample
  auto* sample = app.add_subcommand("sample", "Draw an adjacency matrix from a step graphon");
  std::string s_graphon, s_family = "random", s_theta;
  int s_k = 2, s_n = 64;
  double s_rho = 1.0;
  bool s_clip = false;
  sample->add_option("--graphon", s_graphon, "Step graphon record (overrides --family)");
  sample->add_option("--family", s_family, "random | binary | assortative | constant");
  sample->add_option("-k", s_k, "Number of steps for --family");
  sample->add_option("-n", s_n, "Number of vertices");
  sample->add_option("--rho", s_rho, "Sparsity level");
  sample->add_option("--theta", s_theta, "Also write the probability matrix here");
  sample->add_flag("--clip", s_clip, "Clip rho*W at 1 instead of rejecting");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Estimate the probability matrix of a graph");
  std::string e_input, e_estimator = "svt";
  int e_k = 2, e_restarts = 4;
  double e_rho = 1.0, e_c = cg::kDefaultSvtMultiplier;
  std::optional<double> e_threshold;
  estimate->add_option("--input", e_input, "Adjacency matrix record")->required();
  estimate->add_option("--estimator", e_estimator, "adjacency | mean | svt | rls");
  estimate->add_option("-k", e_k, "Blocks for rls");
  estimate->add_option("--rho", e_rho, "Sparsity cap for rls");
  estimate->add_option("--restarts", e_restarts, "Restarts for rls");
  estimate->add_option("--svt-c", e_c, "Threshold multiplier for svt");
  estimate->add_option("--threshold", e_threshold, "Explicit svt threshold");

  // cutnorm
  auto* cutnorm = app.add_subcommand("cutnorm", "Cut norm of a matrix or step kernel");
  std::string c_input, c_graphon, c_method = "auto";
  int c_restarts = 16, c_q = 4;
  cutnorm->add_option("--input", c_input, "Matrix record");
  cutnorm->add_option("--graphon", c_graphon, "Step graphon record (weighted kernel)");
  cutnorm->add_option("--method", c_method, "auto | exact | heuristic | inf1 | q-subset");
  cutnorm->add_option("--restarts", c_restarts, "Heuristic restarts");
  cutnorm->add_option("-q", c_q, "Subset size for q-subset");

  // distance
  auto* distance = app.add_subcommand("distance", "Distance between two step graphons");
  std::string d_first, d_second, d_metric = "cut";
  int d_restarts = 32, d_blowup = 0, d_cut_restarts = 16;
  bool d_exact = false, d_unbounded = false;
  distance->add_option("--first", d_first, "Step graphon record")->required();
  distance->add_option("--second", d_second, "Step graphon record")->required();
  distance->add_option("--metric", d_metric, "cut | l1 | l2");
  distance->add_option("--restarts", d_restarts, "Random permutation restarts");
  distance->add_option("--blowup", d_blowup, "Common refinement size (0 = auto)");
  distance->add_option("--cut-restarts", d_cut_restarts, "Heuristic cut-norm restarts");
  distance->add_flag("--exact", d_exact, "Enumerate all permutations (tiny inputs)");
  distance->add_flag("--unbounded", d_unbounded, "Allow values above 1");

  // regularity
  auto* regularity = app.add_subcommand("regularity", "Weak regularity approximation");
  std::string r_input;
  int r_q0 = 16;
  regularity->add_option("--input", r_input, "Step graphon record")->required();
  regularity->add_option("--q0", r_q0, "Step budget");

  // packing
  auto* packing = app.add_subcommand("packing", "Build a packing family and write its metadata");
  std::string p_type = "matrix";
  int p_n = 64, p_k = 64;
  double p_rho = 1.0;
  packing->add_option("--type", p_type, "matrix | graphon");
  packing->add_option("-n", p_n, "Vertices");
  packing->add_option("-k", p_k, "Steps (graphon packing)");
  packing->add_option("--rho", p_rho, "Sparsity level");

  // risk
  auto* risk = app.add_subcommand("risk", "Run a Monte Carlo risk experiment from --config");

  // slope
  auto* slope = app.add_subcommand("slope", "Fit a log-log rate slope to a risk CSV");
  std::string l_input, l_estimator = "adjacency", l_metric = "cut", l_axis = "n",
                       l_transform = "log";
  slope->add_option("--input", l_input, "Risk CSV")->required();
  slope->add_option("--estimator", l_estimator, "Estimator column filter");
  slope->add_option("--metric", l_metric, "Metric column filter");
  slope->add_option("--axis", l_axis, "n | k | rho");
  slope->add_option("--transform", l_transform, "log | k-over-log-k");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) {
      cg::StepGraphon w = s_graphon.empty() ? cg::truth_graphon(s_family, s_k, g.seed)
                                            : load_graphon(s_graphon, false);
      cg::ModelSpec spec = cg::make_model_spec(w, s_rho, s_n, g.seed);
      cg::CounterRng rng = cg::CounterRng::stream(g.seed, {0x73616d70ULL});
      cg::LatentSample xi = cg::sample_latents(s_n, rng.at(0));
      cg::ProbMatrix theta = s_clip ? cg::sample_theta_clipped(spec, xi) : cg::sample_theta(spec, xi);
      cg::AdjacencyMatrix a = cg::sample_adjacency(theta, rng.at(1));
      if (!s_theta.empty()) {
        Output t(s_theta);
        cg::write_record(t.stream(), theta.values());
        t.close();
      }
      Output out(g.out);
      cg::write_record(out.stream(), a.values());
      out.close();
    } else if (*estimate) {
      cg::AdjacencyMatrix a = cg::AdjacencyMatrix::from(load_matrix(e_input));
      std::optional<cg::ProbMatrix> est;
      if (e_estimator == "adjacency") {
        est = cg::estimate_adjacency(a);
      } else if (e_estimator == "mean") {
        est = cg::estimate_mean(a).estimate;
      } else if (e_estimator == "svt") {
        cg::SvtConfig cfg = e_threshold ? cg::SvtConfig::with_threshold(*e_threshold)
                                        : cg::SvtConfig::from_graph(a, e_c);
        est = cg::estimate_svt(a, cfg).estimate;
      } else if (e_estimator == "rls") {
        est = cg::block_matrix(cg::estimate_restricted_ls(a, e_k, e_rho, e_restarts, g.seed));
      } else {
        throw cg::ValidationError("unknown estimator '" + e_estimator + "'");
      }
      Output out(g.out);
      cg::write_record(out.stream(), est->values());
      out.close();
    } else if (*cutnorm) {
      if (c_input.empty() == c_graphon.empty()) {
        throw cg::ValidationError("cutnorm: give exactly one of --input, --graphon");
      }
      cg::CutNormResult r;
      if (!c_graphon.empty()) {
        cg::Kernel kern = cg::Kernel::from_graphon(load_graphon(c_graphon, true));
        if (c_method == "q-subset") {
          r = cg::q_subset_upper_bound(kern, c_q);
        } else if (c_method == "auto" || c_method == "exact") {
          r = cg::step_kernel_cut_norm_exact(kern);
        } else {
          throw cg::ValidationError("cutnorm: method '" + c_method + "' needs --input");
        }
      } else {
        cg::Matrix b = load_matrix(c_input);
        const bool small = std::min(b.rows(), b.cols()) <= cg::kExactCutLimit;
        if (c_method == "exact" || (c_method == "auto" && small)) {
          r = cg::matrix_cut_norm_exact(b);
        } else if (c_method == "heuristic" || c_method == "auto") {
          r = cg::matrix_cut_norm_heuristic(b, c_restarts, g.seed);
        } else if (c_method == "inf1") {
          r = cg::inf1_norm(b, c_restarts, g.seed);
        } else {
          throw cg::ValidationError("cutnorm: unknown method '" + c_method + "'");
        }
      }
      Output out(g.out);
      kv(out.stream(), "value", r.value);
      out.stream() << "method=" << cg::to_string(r.method) << '\n';
      out.stream() << "upper_bound=" << (r.is_upper_bound ? "true" : "false") << '\n';
      out.close();
    } else if (*distance) {
      cg::StepGraphon w1 = load_graphon(d_first, d_unbounded);
      cg::StepGraphon w2 = load_graphon(d_second, d_unbounded);
      cg::Metric metric = cg::parse_metric(d_metric);
      Output out(g.out);
      if (d_exact) {
        kv(out.stream(), "value", cg::delta_exact_tiny(w1, w2, metric));
      } else {
        cg::DistanceOptions opt;
        opt.blowup = d_blowup;
        opt.restarts = d_restarts;
        opt.seed = g.seed;
        opt.cut_restarts = d_cut_restarts;
        cg::DistanceEstimate e = cg::delta_upper(w1, w2, metric, opt);
        kv(out.stream(), "upper", e.upper);
        kv(out.stream(), "lower", e.lower);
        out.stream() << "blowup=" << e.blowup << '\n'
                     << "exact_refinement=" << (e.exact_refinement ? "true" : "false") << '\n'
                     << "evaluation=" << cg::to_string(e.evaluation) << '\n';
      }
      out.close();
    } else if (*regularity) {
      cg::RegularityResult r = cg::weak_regularity_approx(load_graphon(r_input, false), r_q0);
      const auto& d = r.decomposition;
      std::cerr << "terms=" << d.terms.size() << " k0=" << d.k0
                << " residual_cut=" << cg::format_double(d.residual_cut)
                << " bound=" << cg::format_double(d.bound) << '\n';
      Output out(g.out);
      cg::write_record(out.stream(), r.approximation.values());
      out.close();
    } else if (*packing) {
      cg::PackingFamily fam = p_type == "matrix"    ? cg::matrix_packing(p_n, p_rho, g.seed)
                              : p_type == "graphon" ? cg::graphon_packing(p_k, p_n, p_rho, g.seed)
                                                    : throw cg::ValidationError("unknown packing type");
      Output out(g.out);
      cg::write_packing_metadata(out.stream(), fam);
      out.close();
    } else if (*risk) {
      if (g.config.empty()) throw cg::ValidationError("risk: --config is required");
      cg::ExperimentConfig cfg = cg::load_config(g.config);
      if (app.get_option("--seed")->count() > 0) cfg.seed = g.seed;
      if (!g.out.empty()) cfg.out = g.out;
      cg::RiskReport report = cg::run_risk_experiment(cfg);
      for (const auto& f : report.failures) {
        std::cerr << "cell n=" << f.n << " k=" << f.k << " rho=" << cg::format_double(f.rho)
                  << " estimator=" << f.estimator << " rep=" << f.rep << ": " << f.message << '\n';
      }
      if (cfg.out.empty()) {
        cg::write_csv(std::cout, report);
      } else {
        std::filesystem::create_directories(cfg.out);
        cg::emit(report, "csv", (std::filesystem::path(cfg.out) / "risk.csv").string());
        cg::emit(report, "svg", (std::filesystem::path(cfg.out) / "risk.svg").string());
      }
    } else if (*slope) {
      auto in = open_input(l_input);
      cg::RiskReport report;
      report.rows = cg::read_csv(in);
      cg::SlopeAxis axis = l_axis == "n"     ? cg::SlopeAxis::N
                           : l_axis == "k"   ? cg::SlopeAxis::K
                           : l_axis == "rho" ? cg::SlopeAxis::Rho
                                             : throw cg::ValidationError("unknown axis");
      cg::SlopeTransform tr = l_transform == "log"           ? cg::SlopeTransform::Log
                              : l_transform == "k-over-log-k" ? cg::SlopeTransform::KOverLogK
                                                              : throw cg::ValidationError("unknown transform");
      cg::SlopeFit fit = cg::fit_rate_slope(cg::select_rows(report, l_estimator, l_metric), axis, tr);
      Output out(g.out);
      kv(out.stream(), "slope", fit.slope);
      kv(out.stream(), "intercept", fit.intercept);
      kv(out.stream(), "r2", fit.r2);
      out.close();
    }
  } catch (const cg::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const cg::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
