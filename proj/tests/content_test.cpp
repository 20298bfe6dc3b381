// Copyright 2026 The Choquet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include "choquet/content.hpp"
#include "choquet/random.hpp"
#include "oracles.hpp"

namespace {

using namespace choquet;

GridFunction set_from_bits(const LatticeConfig& cfg, std::uint64_t bits) {
  std::vector<double> v(cfg.leaf_count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (bits >> i & 1U) ? 1.0 : 0.0;
  return {cfg, std::move(v)};
}

TEST(HausdorffContent, FullRootCostsOne) {
  for (const LatticeConfig cfg : {LatticeConfig{1, 4, 0.5}, LatticeConfig{2, 3, 1.5}}) {
    const auto r = hausdorff_content(GridFunction::constant(cfg, 1.0));
    EXPECT_DOUBLE_EQ(r.value, 1.0);
    ASSERT_EQ(r.optimal_cover.size(), 1U);
    EXPECT_EQ(r.optimal_cover[0], CubeId::root(cfg.n));
  }
}

TEST(HausdorffContent, SingleCubeCostsItsWeight) {
  const LatticeConfig cfg{2, 4, 1.3};
  for (const auto& q : all_cubes(cfg)) {
    const auto r = hausdorff_content(GridFunction::indicator(cfg, q));
    EXPECT_NEAR(r.value, std::pow(q.side(), cfg.d), 1e-14) << q.to_string();
    ASSERT_EQ(r.optimal_cover.size(), 1U);
    EXPECT_EQ(r.optimal_cover[0], q);
  }
}

TEST(HausdorffContent, TwoSeparatedQuarters) {
  // E = [0,1/4) u [1/2,3/4): {root} and the two leaves tie at cost 1.
  const LatticeConfig cfg{1, 2, 0.5};
  const GridFunction e(cfg, {1, 0, 1, 0});
  const auto r = hausdorff_content(e);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_NEAR(oracle::brute_force_content(e), 1.0, 1e-12);
  // Ties resolve toward the single cube.
  ASSERT_EQ(r.optimal_cover.size(), 1U);
  EXPECT_EQ(r.optimal_cover[0], CubeId::root(1));
}

TEST(HausdorffContent, EmptySetAndBadInput) {
  const LatticeConfig cfg{1, 3, 0.5};
  const auto r = hausdorff_content(GridFunction::zeros(cfg));
  EXPECT_EQ(r.value, 0.0);
  EXPECT_TRUE(r.optimal_cover.empty());
  EXPECT_THROW(hausdorff_content(GridFunction::constant(cfg, 0.5)), NonIndicatorError);
}

// Every subset of leaves, against exhaustive cover enumeration.
TEST(HausdorffContent, MatchesBruteForceOnEverySmallSet) {
  for (const LatticeConfig cfg : {LatticeConfig{1, 3, 0.5}, LatticeConfig{1, 3, 0.25},
                                  LatticeConfig{1, 2, 0.9}}) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cfg.leaf_count()); ++bits) {
      const auto e = set_from_bits(cfg, bits);
      EXPECT_NEAR(hausdorff_content(e).value, oracle::brute_force_content(e), 1e-12);
    }
  }
}

TEST(HausdorffContent, MatchesBruteForceInTheSquare) {
  const LatticeConfig cfg{2, 2, 1.0};
  Rng rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    const auto e = random_set(cfg, rng);
    EXPECT_NEAR(hausdorff_content(e).value, oracle::brute_force_content(e), 1e-12);
  }
}

TEST(HausdorffContent, CoverIsOptimalAntichain) {
  const LatticeConfig cfg{2, 4, 1.2};
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto e = random_set(cfg, rng);
    const auto r = hausdorff_content(e);
    double cost = 0.0;
    std::vector<int> covered(cfg.leaf_count(), 0);
    for (const auto& q : r.optimal_cover) {
      cost += std::pow(q.side(), cfg.d);
      for_each_leaf(cfg, q, [&](std::size_t leaf) { ++covered[leaf]; });
    }
    EXPECT_NEAR(cost, r.value, 1e-12 * std::max(1.0, r.value));
    for (std::size_t i = 0; i < cfg.leaf_count(); ++i) {
      if (e[i] != 0.0) {
        EXPECT_EQ(covered[i], 1);
      }
      EXPECT_LE(covered[i], 1);
    }
    EXPECT_NEAR(r.value, oracle::recursive_content(e), 1e-12);
  }
}

TEST(HausdorffContent, MonotoneAndSubadditive) {
  const LatticeConfig cfg{1, 7, 0.5};
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto e = random_set(cfg, rng);
    const auto f = random_set(cfg, rng);
    const auto both = e + f;
    const auto u = both.map([](double v) { return v > 0.0 ? 1.0 : 0.0; });
    const auto i = (e * f);
    const double he = hausdorff_content(e).value;
    const double hf = hausdorff_content(f).value;
    const double hu = hausdorff_content(u).value;
    EXPECT_LE(hu, he + hf + 1e-12);
    EXPECT_LE(he, hu + 1e-12);
    EXPECT_LE(hausdorff_content(i).value, std::min(he, hf) + 1e-12);
  }
}

TEST(HausdorffContent, IncrementalTreeMatchesRebuild) {
  const LatticeConfig cfg{2, 3, 1.0};
  Rng rng(8);
  std::vector<double> v(cfg.leaf_count(), 0.0);
  CoverTree tree(cfg);
  for (int step = 0; step < 40; ++step) {
    const auto leaf = rng.below(cfg.leaf_count());
    v[leaf] = 1.0;
    tree.insert_leaf(leaf);
    EXPECT_NEAR(tree.value(), hausdorff_content(GridFunction(cfg, v)).value, 1e-14);
  }
}

TEST(FrostmanMeasure, RootGivesLebesgue) {
  const LatticeConfig cfg{2, 3, 1.0};
  const auto mu = frostman_measure(GridFunction::constant(cfg, 1.0));
  for (double v : mu.values()) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(FrostmanMeasure, TwoQuartersAreTight) {
  const LatticeConfig cfg{1, 2, 0.5};
  const auto mu = frostman_measure(GridFunction(cfg, {1, 0, 1, 0}));
  EXPECT_NEAR(mu[0], 2.0, 1e-14);
  EXPECT_EQ(mu[1], 0.0);
  EXPECT_NEAR(mu[2], 2.0, 1e-14);
  EXPECT_EQ(mu[3], 0.0);
  EXPECT_NEAR(measure_of_cube(mu, CubeId{2, {0}}), 0.5, 1e-14);
}

TEST(FrostmanMeasure, SingleLeafCarriesItsWeight) {
  const LatticeConfig cfg{1, 3, 0.5};
  const CubeId leaf{3, {5}};
  const auto mu = frostman_measure(GridFunction::indicator(cfg, leaf));
  EXPECT_NEAR(measure_of_cube(mu, leaf), std::pow(0.125, 0.5), 1e-14);
  EXPECT_NEAR(measure_of_cube(mu, CubeId::root(1)), std::pow(0.125, 0.5), 1e-14);
}

TEST(FrostmanMeasure, EmptySetIsAnError) {
  EXPECT_THROW(frostman_measure(GridFunction::zeros({1, 2, 0.5})), EmptySetError);
}

TEST(FrostmanMeasure, StrongDualityAgainstMaxFlow) {
  for (const LatticeConfig cfg : {LatticeConfig{1, 3, 0.5}, LatticeConfig{2, 3, 1.0},
                                  LatticeConfig{2, 2, 1.7}}) {
    Rng rng(2);
    for (int trial = 0; trial < 40; ++trial) {
      const auto e = random_set(cfg, rng);
      const auto mu = frostman_measure(e);
      const double content = hausdorff_content(e).value;
      EXPECT_NEAR(measure_of_cube(mu, CubeId::root(cfg.n)), content, 1e-10);
      EXPECT_NEAR(oracle::frostman_max_flow(e), content, 1e-10);
      EXPECT_LE(frostman_excess(mu).worst_excess, 1e-12);
      for (std::size_t i = 0; i < cfg.leaf_count(); ++i) {
        if (e[i] == 0.0) {
          EXPECT_EQ(mu[i], 0.0);
        }
      }
    }
  }
}

TEST(ChoquetIntegral, SingleLayer) {
  const LatticeConfig cfg{2, 3, 1.4};
  const CubeId q{2, {1, 3}};
  const auto f = GridFunction::indicator(cfg, q).scaled(2.5);
  EXPECT_NEAR(choquet_integral(f), 2.5 * std::pow(0.25, 1.4), 1e-14);
}

TEST(ChoquetIntegral, TwoLayerExample) {
  const LatticeConfig cfg{1, 2, 0.5};
  const GridFunction f(cfg, {2, 0, 1, 0});
  EXPECT_NEAR(choquet_integral(f), 1.5, 1e-12);
  EXPECT_NEAR(oracle::layer_cake(f), 1.5, 1e-12);
}

TEST(ChoquetIntegral, ZeroAndNegativity) {
  const LatticeConfig cfg{1, 2, 0.5};
  EXPECT_EQ(choquet_integral(GridFunction::zeros(cfg)), 0.0);
  EXPECT_THROW(choquet_integral(GridFunction(cfg, {0, -1, 0, 0})), NegativityError);
}

TEST(ChoquetIntegral, MatchesNaiveLayerCake) {
  for (const LatticeConfig cfg : {LatticeConfig{1, 5, 0.5}, LatticeConfig{2, 3, 1.0}}) {
    Rng rng(29);
    for (int trial = 0; trial < 60; ++trial) {
      const auto f = random_function(cfg, rng);
      EXPECT_NEAR(choquet_integral(f), oracle::layer_cake(f),
                  1e-12 * std::max(1.0, choquet_integral(f)));
    }
  }
}

TEST(ChoquetIntegral, PositivelyHomogeneous) {
  const LatticeConfig cfg{1, 6, 0.3};
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_function(cfg, rng);
    const double c = std::exp2(rng.uniform(-8.0, 8.0));
    EXPECT_NEAR(choquet_integral(f.scaled(c)), c * choquet_integral(f),
                1e-13 * c * std::max(1.0, choquet_integral(f)));
  }
}

TEST(ChoquetIntegral, ExtremalMeasureAttainsIt) {
  const LatticeConfig cfg{2, 3, 1.0};
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto h = random_function(cfg, rng);
    const auto mu = extremal_measure(h);
    EXPECT_LE(frostman_excess(mu).worst_excess, 1e-12);
    EXPECT_NEAR(integrate(h, mu), choquet_integral(h), 1e-12);
  }
}

TEST(ChoquetNorm, ExamplesAndDomain) {
  const LatticeConfig cfg{2, 3, 1.0};
  const auto one = GridFunction::constant(cfg, 1.0);
  for (double p : {0.5, 1.0, 2.0, 7.0, kInfinity}) EXPECT_NEAR(choquet_norm(one, p), 1.0, 1e-14);

  const CubeId q{2, {0, 1}};
  const auto f = GridFunction::indicator(cfg, q).scaled(3.0);
  for (double p : {1.0, 2.0, 3.0}) {
    EXPECT_NEAR(choquet_norm(f, p), 3.0 * std::pow(0.25, cfg.d / p), 1e-13);
  }

  const LatticeConfig line{1, 1, 0.5};
  EXPECT_DOUBLE_EQ(choquet_norm(GridFunction(line, {0.3, -0.7}), kInfinity), 0.7);
  EXPECT_THROW(choquet_norm(one, 0.0), DomainError);
  EXPECT_THROW(choquet_norm(one, -1.0), DomainError);
}

TEST(ChoquetNorm, TriangleInequality) {
  const LatticeConfig cfg{1, 6, 0.5};
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_function(cfg, rng);
    const auto g = random_function(cfg, rng);
    for (double p : {1.0, 1.5, 3.0}) {
      EXPECT_LE(choquet_norm(f + g, p), choquet_norm(f, p) + choquet_norm(g, p) + 1e-9);
    }
  }
}

TEST(ChoquetNorm, HoelderInequality) {
  const LatticeConfig cfg{2, 3, 1.0};
  Rng rng(19);
  for (int trial = 0; trial < 150; ++trial) {
    const auto f = random_function(cfg, rng);
    const auto g = random_function(cfg, rng);
    EXPECT_LE(choquet_integral(f * g), choquet_norm(f, 1.0) * choquet_norm(g, kInfinity) + 1e-9);
    EXPECT_LE(choquet_integral(f * g), choquet_norm(f, 2.0) * choquet_norm(g, 2.0) + 1e-9);
    EXPECT_LE(choquet_integral(f * g), choquet_norm(f, 4.0) * choquet_norm(g, 4.0 / 3.0) + 1e-9);
  }
}

// Cubes bigger than the root would cost 2^{md} > 1, so the root is the
// cheapest cube covering anything: the DP never needs them.
TEST(HausdorffContent, NeverExceedsTheRoot) {
  const LatticeConfig cfg{2, 3, 0.7};
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    EXPECT_LE(hausdorff_content(random_set(cfg, rng)).value, 1.0 + 1e-15);
  }
}

}  // namespace
