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

/// \file
/// Dyadic maximal operators: Hardy-Littlewood M, the fractional measure
/// maximal M_d and the fractional Orlicz maximal M_{alpha,Phi}. Suprema run
/// over the L+1 lattice ancestors of each leaf.

#pragma once

#include <cmath>
#include <vector>

#include "choquet/content.hpp"
#include "choquet/lattice.hpp"
#include "choquet/young.hpp"

namespace choquet {

struct MaximalResult {
  GridFunction values;
  /// Level of the attaining ancestor, per leaf.
  std::vector<int> argmax_level;

  [[nodiscard]] CubeId argmax_cube(std::size_t leaf) const {
    const auto& cfg = values.config();
    const int k = argmax_level[leaf];
    return cube_from_flat(cfg, k, ancestor_flat(cfg.n, cfg.L, leaf, k));
  }
};

/// Candidate values per cube, level by level.
using CubeTable = std::vector<std::vector<double>>;

/// Per leaf, the maximum of table[k][ancestor] over k; ties go to the
/// largest cube.
inline MaximalResult maximize_over_ancestors(const LatticeConfig& cfg,
                                             const CubeTable& table) {
  std::vector<double> values(cfg.leaf_count(), 0.0);
  std::vector<int> level(cfg.leaf_count(), 0);
  for (std::size_t leaf = 0; leaf < cfg.leaf_count(); ++leaf) {
    double best = table[0][0];
    int arg = 0;
    for (int k = 1; k <= cfg.L; ++k) {
      const double v = table[k][ancestor_flat(cfg.n, cfg.L, leaf, k)];
      if (v > best) {
        best = v;
        arg = k;
      }
    }
    values[leaf] = best;
    level[leaf] = arg;
  }
  return {GridFunction(cfg, std::move(values)), std::move(level)};
}

/// Mf(x) = max over dyadic Q containing x of the mean of |f| on Q.
inline MaximalResult hl_maximal(const GridFunction& f) {
  const auto& cfg = f.config();
  CubeSums sums(f.abs());
  CubeTable table(cfg.L + 1);
  for (int k = 0; k <= cfg.L; ++k) {
    table[k].resize(cfg.cubes_at(k));
    for (std::size_t q = 0; q < table[k].size(); ++q) table[k][q] = sums.mean(k, q);
  }
  return maximize_over_ancestors(cfg, table);
}

/// M_d mu(x) = max over dyadic Q containing x of mu(Q)/l(Q)^d.
inline MaximalResult fractional_measure_maximal(const GridFunction& mu, double d) {
  require_nonnegative(mu, "measure density");
  const auto& cfg = mu.config();
  CubeSums sums(mu);
  const double vol = cfg.volume(cfg.L);
  CubeTable table(cfg.L + 1);
  for (int k = 0; k <= cfg.L; ++k) {
    const double inv_weight = std::exp2(static_cast<double>(k) * d);
    table[k].resize(cfg.cubes_at(k));
    for (std::size_t q = 0; q < table[k].size(); ++q) {
      table[k][q] = sums.at(k, q) * vol * inv_weight;
    }
  }
  return maximize_over_ancestors(cfg, table);
}

inline MaximalResult fractional_measure_maximal(const GridFunction& mu) {
  return fractional_measure_maximal(mu, mu.config().d);
}

/// ||f||_{Phi;Q} for every lattice cube.
inline CubeTable luxemburg_table(const GridFunction& f, const YoungFunction& phi) {
  const auto& cfg = f.config();
  CubeTable table(cfg.L + 1);
  for (int k = 0; k <= cfg.L; ++k) {
    table[k].resize(cfg.cubes_at(k));
    for (std::size_t q = 0; q < table[k].size(); ++q) {
      table[k][q] = luxemburg_norm(f, cube_from_flat(cfg, k, q), phi);
    }
  }
  return table;
}

/// M_{alpha,Phi} f(x) = max over dyadic Q containing x of
/// l(Q)^alpha ||f||_{Phi;Q}.
inline MaximalResult orlicz_fractional_maximal(const GridFunction& f, double alpha,
                                               const YoungFunction& phi) {
  const auto& cfg = f.config();
  if (!(alpha > 0.0 && alpha < static_cast<double>(cfg.n))) {
    throw DomainError("fractional order alpha must lie in (0, n)");
  }
  auto table = luxemburg_table(f, phi);
  for (int k = 0; k <= cfg.L; ++k) {
    const double scale = LatticeConfig::side_power(k, alpha);
    for (auto& v : table[k]) v *= scale;
  }
  return maximize_over_ancestors(cfg, table);
}

}  // namespace choquet
