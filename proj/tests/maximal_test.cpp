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

#include "choquet/maximal.hpp"
#include "choquet/random.hpp"
#include "oracles.hpp"

namespace {

using namespace choquet;

TEST(HardyLittlewood, ConstantAndTwoCellExamples) {
  const LatticeConfig cfg{2, 3, 1.0};
  const auto constant = hl_maximal(GridFunction::constant(cfg, 1.0));
  for (double v : constant.values.values()) EXPECT_EQ(v, 1.0);
  const auto r = hl_maximal(GridFunction({1, 1, 0.5}, {2, 0}));
  EXPECT_EQ(r.values[0], 2.0);
  EXPECT_EQ(r.values[1], 1.0);
  EXPECT_EQ(r.argmax_cube(0), (CubeId{1, {0}}));
  EXPECT_EQ(r.argmax_cube(1), CubeId::root(1));
}

TEST(HardyLittlewood, MatchesDirectAveragesAndDominates) {
  for (const LatticeConfig cfg : {LatticeConfig{1, 5, 0.5}, LatticeConfig{2, 3, 1.0}}) {
    Rng rng(14);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_function(cfg, rng).map([&](double v) {
        return rng.bernoulli(0.3) ? -v : v;
      });
      const auto r = hl_maximal(f);
      const auto expected =
          oracle::direct_ancestor_max(cfg, [&](const CubeId& q) { return oracle::direct_mean(f, q); });
      for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_NEAR(r.values[i], expected[i], 1e-13);
        EXPECT_GE(r.values[i], std::abs(f[i]) - 1e-15);
        const auto q = r.argmax_cube(i);
        EXPECT_TRUE(oracle::leaf_in_cube(cfg, i, q));
        EXPECT_NEAR(oracle::direct_mean(f, q), r.values[i], 1e-12);
      }
    }
  }
}

TEST(HardyLittlewood, TiesGoToTheLargestCube) {
  const LatticeConfig cfg{1, 3, 0.5};
  const auto r = hl_maximal(GridFunction::constant(cfg, 0.7));
  for (std::size_t i = 0; i < cfg.leaf_count(); ++i) EXPECT_EQ(r.argmax_level[i], 0);
}

TEST(FractionalMeasureMaximal, LebesgueIsOne) {
  const LatticeConfig cfg{2, 3, 1.3};
  const auto r = fractional_measure_maximal(GridFunction::constant(cfg, 1.0));
  for (double v : r.values.values()) {
    EXPECT_DOUBLE_EQ(v, 1.0);
  }
}

TEST(FractionalMeasureMaximal, FrostmanOfTwoQuartersIsOne) {
  const LatticeConfig cfg{1, 2, 0.5};
  const GridFunction mu(cfg, {2, 0, 2, 0});
  const auto r = fractional_measure_maximal(mu);
  for (double v : r.values.values()) EXPECT_NEAR(v, 1.0, 1e-14);
}

TEST(FractionalMeasureMaximal, ZeroAndNegativity) {
  const LatticeConfig cfg{1, 3, 0.5};
  const auto r = fractional_measure_maximal(GridFunction::zeros(cfg));
  for (double v : r.values.values()) {
    EXPECT_EQ(v, 0.0);
  }
  EXPECT_THROW(fractional_measure_maximal(GridFunction::constant(cfg, -1.0)), NegativityError);
}

TEST(FractionalMeasureMaximal, MatchesDirectRatios) {
  const LatticeConfig cfg{2, 3, 0.8};
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto mu = random_function(cfg, rng);
    const auto expected = oracle::direct_ancestor_max(cfg, [&](const CubeId& q) {
      return oracle::direct_mean(mu, q) * q.volume() / std::pow(q.side(), cfg.d);
    });
    const auto r = fractional_measure_maximal(mu);
    for (std::size_t i = 0; i < mu.size(); ++i) EXPECT_NEAR(r.values[i], expected[i], 1e-13);
  }
}

TEST(OrliczMaximal, ConstantOneIsOne) {
  const LatticeConfig cfg{1, 4, 0.5};
  const auto r = orlicz_fractional_maximal(GridFunction::constant(cfg, 1.0), 0.5,
                                           YoungFunction::power(3.0));
  for (double v : r.values.values()) EXPECT_NEAR(v, 1.0, 1e-9);
}

TEST(OrliczMaximal, IdentityReducesToFractionalAverages) {
  const LatticeConfig cfg{2, 3, 1.0};
  Rng rng(33);
  const auto f = random_function(cfg, rng);
  const double alpha = 0.6;
  const auto r = orlicz_fractional_maximal(f, alpha, YoungFunction::identity());
  const auto expected = oracle::direct_ancestor_max(cfg, [&](const CubeId& q) {
    return std::pow(q.side(), alpha) * cell_average(f, q);
  });
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_NEAR(r.values[i], expected[i], 1e-9 * std::max(1.0, expected[i]));
  }
}

TEST(OrliczMaximal, RejectsBadOrder) {
  const auto f = GridFunction::constant({1, 2, 0.5}, 1.0);
  EXPECT_THROW(orlicz_fractional_maximal(f, 0.0, YoungFunction::llogl()), DomainError);
  EXPECT_THROW(orlicz_fractional_maximal(f, 1.0, YoungFunction::llogl()), DomainError);
}

TEST(OrliczMaximal, DominatesMeasureMaximalOfTheDensity) {
  for (const LatticeConfig cfg : {LatticeConfig{1, 5, 0.5}, LatticeConfig{2, 3, 1.0}}) {
    Rng rng(44);
    for (int trial = 0; trial < 30; ++trial) {
      const auto f = random_function(cfg, rng);
      const auto md = fractional_measure_maximal(f).values;
      const auto orlicz = orlicz_fractional_maximal(f, cfg.n - cfg.d, YoungFunction::llogl()).values;
      for (std::size_t i = 0; i < f.size(); ++i) EXPECT_LE(md[i], orlicz[i] * (1.0 + 1e-10));
    }
  }
}

TEST(Maximal, MonotoneAndHomogeneous) {
  const LatticeConfig cfg{1, 5, 0.5};
  Rng rng(50);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_function(cfg, rng);
    const auto g = f + random_function(cfg, rng);  // g >= f >= 0
    const double c = rng.uniform(0.1, 10.0);
    const auto llogl = YoungFunction::llogl();
    const auto check = [&](auto op) {
      const auto a = op(f);
      const auto b = op(g);
      const auto s = op(f.scaled(c));
      for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_LE(a[i], b[i] * (1.0 + 1e-10));
        EXPECT_NEAR(s[i], c * a[i], 1e-9 * c * std::max(1.0, a[i]));
      }
    };
    check([](const GridFunction& h) { return hl_maximal(h).values; });
    check([](const GridFunction& h) { return fractional_measure_maximal(h).values; });
    check([&](const GridFunction& h) { return orlicz_fractional_maximal(h, 0.5, llogl).values; });
  }
}

}  // namespace
