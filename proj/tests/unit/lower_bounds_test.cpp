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
#include <random>
#include <set>
#include <sstream>

#include "cutgraphon/cut_distance.hpp"
#include "cutgraphon/cut_norm.hpp"
#include "cutgraphon/error.hpp"
#include "cutgraphon/lower_bounds.hpp"

namespace cg = cutgraphon;
using cg::Matrix;
using cg::Vector;

namespace {

int positive_set_difference(const cg::SignVector& u, const cg::SignVector& v) {
  int d = 0;
  for (std::size_t a = 0; a < u.size(); ++a) d += (u[a] > 0) != (v[a] > 0);
  return d;
}

std::vector<double> scaled(const cg::SignVector& s, double eps) {
  std::vector<double> out;
  for (int x : s) out.push_back(eps * x);
  return out;
}

}  // namespace

TEST(Code, SixteenCoordinates) {
  auto code = cg::varshamov_gilbert_code(16, 1);
  EXPECT_GE(code.words.size(), 3u);
  EXPECT_EQ(code.target, 3u);
  for (std::size_t i = 0; i < code.words.size(); ++i) {
    int sum = 0;
    for (int x : code.words[i]) sum += x;
    EXPECT_EQ(sum, 0);
    for (std::size_t j = i + 1; j < code.words.size(); ++j) {
      EXPECT_GT(positive_set_difference(code.words[i], code.words[j]), 4);
    }
  }
}

TEST(Code, EightCoordinates) {
  auto code = cg::varshamov_gilbert_code(8, 2);
  ASSERT_GE(code.words.size(), 2u);
  for (std::size_t i = 0; i < code.words.size(); ++i) {
    for (std::size_t j = i + 1; j < code.words.size(); ++j) {
      EXPECT_GT(positive_set_difference(code.words[i], code.words[j]), 2);
    }
  }
  EXPECT_GT(code.min_distance, 2);
  EXPECT_THROW(cg::varshamov_gilbert_code(7, 1), cg::ValidationError);
}

TEST(MatrixPacking, ZeroEpsilonCollapses) {
  auto fam = cg::matrix_packing_with_epsilon(16, 1.0, 0.0, 3);
  ASSERT_GE(fam.size(), 2u);
  for (const auto& m : fam.matrices) EXPECT_EQ(m.values(), fam.matrices[0].values());
  EXPECT_EQ(fam.separation_lower, 0.0);
}

TEST(MatrixPacking, TwoValuesAndSeparation) {
  auto fam = cg::matrix_packing(64, 1.0, 4);
  ASSERT_GE(fam.size(), 3u);
  const double eps = fam.epsilon;
  EXPECT_GT(eps, 0.0);
  EXPECT_LE(fam.kl_budget, std::log(static_cast<double>(fam.size())) / 32.0);
  EXPECT_NEAR(fam.kl_budget, 16.0 * 64 * 64 * eps * eps / 3.0, 1e-12);
  EXPECT_TRUE(fam.fano_ready);
  for (const auto& m : fam.matrices) {
    std::set<double> values;
    for (int i = 0; i < 64; ++i) {
      for (int j = 0; j < 64; ++j) {
        if (i != j) values.insert(m(i, j));
      }
    }
    EXPECT_EQ(values, (std::set<double>{0.5 - eps, 0.5 + eps}));
  }
  for (std::size_t i = 0; i + 1 < std::min<std::size_t>(fam.size(), 6); ++i) {
    Matrix d = fam.matrices[i].values() - fam.matrices[i + 1].values();
    double cut = cg::matrix_cut_norm_heuristic(d, 16, i).value;
    EXPECT_GE(cut, eps / 14.0);
    EXPECT_GE(cut, fam.separation_lower - 1e-15);
  }
}

TEST(Rademacher, CertifiesRowInnerProducts) {
  auto rb = cg::rademacher_block_matrix(16, 444, 5);
  EXPECT_TRUE(rb.property_i_certified);
  EXPECT_LE(rb.tries, 10);
  Matrix gram = rb.b * rb.b.transpose();
  for (int a = 0; a < 16; ++a) {
    EXPECT_LE(std::abs(rb.b.row(a).sum()), 444.0);
    for (int c = 0; c < 16; ++c) {
      if (a != c) EXPECT_LE(4.0 * std::abs(gram(a, c)), 444.0);
    }
  }
  EXPECT_EQ(rb.b.cwiseAbs().minCoeff(), 1.0);
}

TEST(Rademacher, SpreadSpotCheck) {
  auto rb = cg::rademacher_block_matrix(16, 444, 6);
  auto check = cg::spot_check_spread(rb, 20, 7);
  EXPECT_EQ(check.samples, 20);
  EXPECT_TRUE(check.passed);
}

TEST(GraphonPacking, WeightBookkeeping) {
  auto fam = cg::graphon_packing(64, 4096, 1.0, 8);
  ASSERT_GE(fam.size(), 3u);
  const int k1 = 32;
  const int mk = static_cast<int>(std::ceil(128.0 * std::log(64.0)));
  EXPECT_EQ(fam.mk, mk);
  for (const auto& g : fam.graphons) {
    EXPECT_NEAR(g.weights().sum(), 1.0, 1e-12);
    int large = 0, small = 0;
    for (int a = 0; a < g.steps(); ++a) {
      double w = g.weights()(a);
      if (std::abs(w - 1.0 / (2.0 * mk)) < 1e-15) {
        ++large;
      } else if (std::abs(std::abs(w - 1.0 / (2.0 * k1)) - fam.epsilon) < 1e-15) {
        ++small;
      }
    }
    EXPECT_EQ(large, mk);
    EXPECT_EQ(small, k1);
  }
  // kl budget is the formula value; readiness follows from it.
  EXPECT_NEAR(fam.kl_budget, 32.0 * 4096 * k1 * k1 * fam.epsilon * fam.epsilon / 3.0, 1e-12);
  EXPECT_EQ(fam.fano_ready, fam.kl_budget <= std::log(static_cast<double>(fam.size())) / 32.0);
  EXPECT_GT(fam.separation_lower, 0.0);
}

TEST(GraphonPacking, SelfDistanceIsZero) {
  auto fam = cg::graphon_packing(64, 4096, 1.0, 9);
  const auto& w = fam.graphons[0];
  EXPECT_EQ(cg::delta_cut_lower(w, w, cg::standard_motifs()), 0.0);
  EXPECT_EQ(cg::matched_distance(w, w, cg::Metric::L1, w.steps(), [&] {
              std::vector<int> id(w.steps());
              for (int i = 0; i < w.steps(); ++i) id[i] = i;
              return id;
            }()),
            0.0);
}

TEST(GraphonPacking, Validation) {
  EXPECT_THROW(cg::graphon_packing(48, 4096, 1.0, 1), cg::ValidationError);
  EXPECT_THROW(cg::graphon_packing(64, 32, 1.0, 1), cg::ValidationError);
  auto two = cg::graphon_packing(2, 100, 1.0, 1);
  EXPECT_EQ(two.size(), 2u);
  EXPECT_FALSE(two.fano_ready);
}

TEST(KlBound, Examples) {
  EXPECT_EQ(cg::kl_bound(std::vector<double>(8, 0.0), std::vector<double>(8, 0.0), 100, 0.0, 8), 0.0);
  cg::SignVector s{1, -1, 1, -1, 1, -1, 1, -1};
  cg::SignVector t{1, 1, -1, -1, 1, 1, -1, -1};
  double b = cg::kl_bound(scaled(s, 0.01), scaled(t, 0.01), 100, 0.01, 8);
  EXPECT_NEAR(b, 32.0 * 100 * 64 * 1e-4 / 3.0, 1e-12);
  EXPECT_NEAR(b, 6.8267, 1e-4);
  EXPECT_THROW(cg::kl_bound(scaled(s, 0.02), scaled(t, 0.02), 100, 0.02, 8), cg::ValidationError);
}

TEST(LatentKl, BoundedByFormula) {
  auto code = cg::varshamov_gilbert_code(16, 10);
  const int n = 500;
  const double eps = 1.0 / (8.0 * 16 * 2);
  for (std::size_t i = 0; i < code.words.size(); ++i) {
    EXPECT_EQ(cg::latent_kl_exact(scaled(code.words[i], eps), scaled(code.words[i], eps), 16, 40, n),
              0.0);
    for (std::size_t j = i + 1; j < code.words.size(); ++j) {
      auto u = scaled(code.words[i], eps);
      auto v = scaled(code.words[j], eps);
      double exact = cg::latent_kl_exact(u, v, 16, 40, n);
      EXPECT_GT(exact, 0.0);
      EXPECT_LE(exact, cg::kl_bound(u, v, n, eps, 16));
      // Large steps carry identical mass, so mk drops out.
      EXPECT_NEAR(exact, cg::latent_kl_exact(u, v, 16, 400, n), 1e-12);
    }
  }
}

TEST(Packing, MetadataKeys) {
  auto fam = cg::matrix_packing(16, 0.5, 11);
  std::ostringstream out;
  cg::write_packing_metadata(out, fam);
  for (const char* key : {"epsilon=", "klBudget=", "separationLower=", "fanoReady="}) {
    EXPECT_NE(out.str().find(key), std::string::npos) << key;
  }
}
