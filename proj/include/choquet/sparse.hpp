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
/// Sparse families of dyadic cubes, the sparse operator A_S and the Cantor
/// corner family.
///
/// The Cantor family keeps the 2^n corner cubes of relative side
/// (1 - delta)/2 at every stage, where 2^{n-d} (1 - delta)^d = 1. In snapped
/// mode d = n/m, so the relative side is 2^{-m}, delta = 1 - 2^{1-m}, and
/// the level-k stage consists of genuine dyadic cubes of level mk. Then
/// 2^n * (2^{-m})^d = 1 and the content recurrence yields H^d(E^k) = 1
/// exactly.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "choquet/content.hpp"
#include "choquet/lattice.hpp"
#include "choquet/random.hpp"
#include "choquet/young.hpp"

namespace choquet {

struct SparseFamily {
  std::vector<CubeId> cubes;
  double eta = 0.5;
};

struct SparseReport {
  double min_ratio = 1.0;          // min |E_Q| / |Q|
  double carleson_constant = 0.0;  // max_Q sum_{Q' in S, Q' in Q} |Q'| / |Q|
  bool sparse = true;              // min_ratio >= eta
  /// Owner of every leaf: index into the family of the cube whose witness
  /// set contains it, or -1.
  std::vector<int> owner;
  std::vector<double> witness_volume;  // |E_Q| per family member
};

/// Canonical witnesses E_Q = Q minus its maximal strict descendants in S.
/// A leaf belongs to E_Q exactly when Q is the smallest member of S
/// containing it, so the witness sets are disjoint by construction.
inline SparseReport verify_sparse(const LatticeConfig& cfg, const SparseFamily& s) {
  SparseReport out;
  out.owner.assign(cfg.leaf_count(), -1);
  out.witness_volume.assign(s.cubes.size(), 0.0);
  if (s.cubes.empty()) return out;

  std::vector<std::vector<int>> member(cfg.L + 1);
  for (int k = 0; k <= cfg.L; ++k) member[k].assign(cfg.cubes_at(k), -1);
  for (std::size_t i = 0; i < s.cubes.size(); ++i) {
    const auto& q = s.cubes[i];
    auto& slot = member[q.level][flat_index(cfg, q)];
    if (slot >= 0) throw ConfigError("sparse family lists cube " + q.to_string() + " twice");
    slot = static_cast<int>(i);
  }
  const double leaf_volume = cfg.volume(cfg.L);
  for (std::size_t leaf = 0; leaf < cfg.leaf_count(); ++leaf) {
    for (int k = cfg.L; k >= 0; --k) {
      const int m = member[k][ancestor_flat(cfg.n, cfg.L, leaf, k)];
      if (m >= 0) {
        out.owner[leaf] = m;
        out.witness_volume[m] += leaf_volume;
        break;
      }
    }
  }
  // Packing sums bottom-up: packed[k][q] = sum of |Q'| over members inside q.
  std::vector<std::vector<double>> packed(cfg.L + 1);
  for (int k = cfg.L; k >= 0; --k) {
    packed[k].assign(cfg.cubes_at(k), 0.0);
    for (std::size_t f = 0; f < packed[k].size(); ++f) {
      double v = member[k][f] >= 0 ? cfg.volume(k) : 0.0;
      if (k < cfg.L) {
        for (std::size_t c = 0; c < cfg.child_count(); ++c) {
          v += packed[k + 1][child_flat(cfg.n, k, f, c)];
        }
      }
      packed[k][f] = v;
    }
  }
  out.min_ratio = 1.0;
  for (std::size_t i = 0; i < s.cubes.size(); ++i) {
    const auto& q = s.cubes[i];
    out.min_ratio = std::min(out.min_ratio, out.witness_volume[i] / q.volume());
    out.carleson_constant = std::max(
        out.carleson_constant, packed[q.level][flat_index(cfg, q)] / q.volume());
  }
  out.sparse = out.min_ratio >= s.eta;
  return out;
}

/// A_S f = sum_{Q in S} (mean of f on Q) 1_Q.
inline GridFunction apply_sparse(const GridFunction& f, const SparseFamily& s) {
  const auto& cfg = f.config();
  CubeSums sums(f);
  std::vector<double> out(cfg.leaf_count(), 0.0);
  for (const auto& q : s.cubes) {
    const double avg = sums.mean(q.level, flat_index(cfg, q));
    for_each_leaf(cfg, q, [&](std::size_t leaf) { out[leaf] += avg; });
  }
  return {cfg, std::move(out)};
}

/// Random subtree selection thinned until every canonical witness has
/// relative volume at least eta: while some member falls short, the worst
/// one is removed (which only enlarges the witnesses of its ancestors).
inline SparseFamily random_sparse_family(const LatticeConfig& cfg, Rng& rng, double eta = 0.5) {
  const double keep = rng.uniform(0.1, 0.6);
  SparseFamily s{{}, eta};
  for (const auto& q : all_cubes(cfg)) {
    if (rng.bernoulli(keep)) s.cubes.push_back(q);
  }
  if (s.cubes.empty()) s.cubes.push_back(random_cube(cfg, rng));
  while (true) {
    const auto report = verify_sparse(cfg, s);
    if (report.sparse) return s;
    std::size_t worst = 0;
    double worst_ratio = 2.0;
    for (std::size_t i = 0; i < s.cubes.size(); ++i) {
      const double r = report.witness_volume[i] / s.cubes[i].volume();
      if (r < worst_ratio) {
        worst_ratio = r;
        worst = i;
      }
    }
    s.cubes.erase(s.cubes.begin() + static_cast<std::ptrdiff_t>(worst));
  }
}

/// Snapped Cantor parameters: d = n/m and stage k made of level-mk cubes.
struct CantorConfig {
  int n = 1;
  int m = 2;
  int K = 0;  // depth

  void validate() const {
    if (n < 1) throw ConfigError("Cantor dimension must be positive");
    if (m < 2) throw ConfigError("snapped Cantor family needs m >= 2");
    if (K < 0) throw ConfigError("Cantor depth must be nonnegative");
  }
  [[nodiscard]] double d() const { return static_cast<double>(n) / m; }
  [[nodiscard]] double delta() const { return 1.0 - std::exp2(1.0 - m); }
  /// Side of a stage-1 cube relative to its parent, (1 - delta)/2.
  [[nodiscard]] double contraction() const { return std::exp2(-m); }
  /// 1 - (1 - delta)^n.
  [[nodiscard]] double eta() const { return 1.0 - std::pow(1.0 - delta(), n); }
  [[nodiscard]] LatticeConfig lattice(int L) const { return {n, L, d()}; }
  [[nodiscard]] LatticeConfig lattice() const { return lattice(m * K); }
};

struct CantorFamily {
  SparseFamily family;
  std::vector<GridFunction> stages;  // E^0 ... E^K as indicators
  std::vector<std::vector<CubeId>> stage_cubes;
};

/// S_0 = {Q_j^k : 0 <= k <= K} and the nested sets E^0 ⊃ ... ⊃ E^K.
inline CantorFamily cantor_family(const CantorConfig& c, int L) {
  c.validate();
  if (c.m * c.K > L) {
    throw ResolutionError("Cantor depth " + std::to_string(c.K) + " with m=" +
                          std::to_string(c.m) + " needs L >= " +
                          std::to_string(c.m * c.K) + ", got L=" + std::to_string(L));
  }
  const auto cfg = c.lattice(L);
  cfg.validate();
  CantorFamily out;
  out.family.eta = c.eta();
  std::vector<CubeId> stage{CubeId::root(c.n)};
  const std::int64_t far = (std::int64_t{1} << c.m) - 1;
  for (int k = 0; k <= c.K; ++k) {
    if (k > 0) {
      std::vector<CubeId> next;
      next.reserve(stage.size() << c.n);
      for (const auto& q : stage) {
        for (std::size_t corner = 0; corner < cfg.child_count(); ++corner) {
          CubeId child{q.level + c.m, q.index};
          for (int i = 0; i < c.n; ++i) {
            const std::int64_t b = (corner >> (c.n - 1 - i)) & 1U;
            child.index[i] = (q.index[i] << c.m) + b * far;
          }
          next.push_back(std::move(child));
        }
      }
      stage = std::move(next);
    }
    out.family.cubes.insert(out.family.cubes.end(), stage.begin(), stage.end());
    out.stages.push_back(GridFunction::indicator(cfg, stage));
    out.stage_cubes.push_back(stage);
  }
  return out;
}

/// H^d(E^k), computed by the content DP.
inline double cantor_content(const CantorConfig& c, int k, int L) {
  if (k < 0 || k > c.K) throw DomainError("Cantor stage outside [0, K]");
  CantorConfig upto = c;
  upto.K = k;
  const auto family = cantor_family(upto, L);
  return hausdorff_content(family.stages.back()).value;
}

/// F_K = A_{S_0}[1_root] = number of family cubes containing each point.
inline GridFunction cantor_function(const CantorConfig& c, int L) {
  const auto family = cantor_family(c, L);
  return apply_sparse(GridFunction::constant(c.lattice(L), 1.0), family.family);
}

struct CantorLuxBound {
  double lambda0 = 0.0;
  double Lambda0 = 0.0;      // e^{1/lambda0} (1 - delta)^n
  double lambda_star = 0.0;  // e^{1/lambda0} / (1 - Lambda0)
  double computed_norm = 0.0;
};

/// lambda0 = 2 / (n log(1/(1-delta))), making Lambda0 = (1-delta)^{n/2} < 1.
inline CantorLuxBound cantor_lux_constants(int n, double delta) {
  CantorLuxBound out;
  out.lambda0 = 2.0 / (n * std::log(1.0 / (1.0 - delta)));
  const double growth = std::exp(1.0 / out.lambda0);
  out.Lambda0 = growth * std::pow(1.0 - delta, n);
  out.lambda_star = growth / (1.0 - out.Lambda0);
  return out;
}

/// The bound lambda* together with the bisected ||F_K||_{expm1;root}.
inline CantorLuxBound cantor_lux_bound(const CantorConfig& c, int L) {
  auto out = cantor_lux_constants(c.n, c.delta());
  const auto F = cantor_function(c, L);
  out.computed_norm = luxemburg_norm(F.values(), YoungFunction::expm1());
  return out;
}

inline CantorLuxBound cantor_lux_bound(const CantorConfig& c) {
  return cantor_lux_bound(c, c.m * c.K);
}

struct GrowthRow {
  int K = 0;
  double norm = 0.0;  // ||F_K||_{L^p(H^d)}
};

/// ||F_K||_{L^p(H^d)} for K = 0..c.K.
inline std::vector<GrowthRow> unboundedness_demo(const CantorConfig& c, double p, int L) {
  if (!(p >= 1.0)) throw DomainError("growth table needs p >= 1");
  std::vector<GrowthRow> rows;
  for (int K = 0; K <= c.K; ++K) {
    CantorConfig upto = c;
    upto.K = K;
    rows.push_back({K, choquet_norm(cantor_function(upto, L), p)});
  }
  return rows;
}

inline std::vector<GrowthRow> unboundedness_demo(const CantorConfig& c, double p) {
  return unboundedness_demo(c, p, c.m * c.K);
}

/// The Cantor family for a general exponent 0 < d < n, whose side ratio
/// 2^{-n/d} is not dyadic. Only closed forms are available here.
struct GenericCantor {
  int n = 1;
  double d = 0.5;

  /// Solution of 2^{n-d} (1 - delta)^d = 1.
  [[nodiscard]] double delta() const { return 1.0 - std::exp2((d - n) / d); }
  [[nodiscard]] double side(int k) const { return std::pow((1.0 - delta()) / 2.0, k); }
  /// |E^k| = (1 - delta)^{nk}.
  [[nodiscard]] double measure(int k) const { return std::pow(1.0 - delta(), n * k); }
  [[nodiscard]] double eta() const { return 1.0 - std::pow(1.0 - delta(), n); }
  [[nodiscard]] CantorLuxBound lux_constants() const { return cantor_lux_constants(n, delta()); }

  /// Upper bound on the dyadic content H^d(E^k): each stage cube of side s
  /// meets at most 2^n dyadic cubes of the side 2^{-j} with
  /// 2^{-j-1} < s <= 2^{-j}.
  [[nodiscard]] double covering_bound(int k) const {
    const double s = side(k);
    const double j = std::floor(-std::log2(s));
    return std::pow(2.0, n * k) * std::pow(2.0, n) * std::exp2(-j * d);
  }
};

}  // namespace choquet
