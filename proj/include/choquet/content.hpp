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
/// Dyadic Hausdorff content, its Frostman measures and Choquet integration.
///
/// The content of a union E of leaf cells is the minimum of sum l(Q)^d over
/// covers of E by lattice cubes. It is computed by the tree recurrence
///
///   cost(Q) = 0                              if Q does not meet E,
///   cost(Q) = l(Q)^d                         at an occupied leaf,
///   cost(Q) = min(l(Q)^d, sum_children cost) otherwise,
///
/// and H^d(E) = cost(root). The dual packing problem (maximize mu(E) over
/// measures with mu(Q) <= l(Q)^d) is a max-flow on the same tree and has the
/// same value.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "choquet/error.hpp"
#include "choquet/lattice.hpp"

namespace choquet {

/// Absolute tolerance for content comparisons. Ties between a cube and its
/// children resolve toward the single cube.
inline constexpr double kContentTolerance = 1e-12;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct ContentResult {
  double value = 0.0;
  std::vector<CubeId> optimal_cover;
};

/// Bottom-up cover DP over every lattice cube, updatable one leaf at a time.
class CoverTree {
 public:
  explicit CoverTree(const LatticeConfig& cfg) : config_(cfg) {
    config_.validate();
    cost_.resize(cfg.L + 1);
    take_.resize(cfg.L + 1);
    weight_.resize(cfg.L + 1);
    for (int k = 0; k <= cfg.L; ++k) {
      cost_[k].assign(cfg.cubes_at(k), 0.0);
      take_[k].assign(cfg.cubes_at(k), 0);
      weight_[k] = cfg.content_weight(k);
    }
  }

  /// Full DP for an indicator.
  void build(std::span<const double> indicator) {
    const int L = config_.L;
    for (std::size_t leaf = 0; leaf < indicator.size(); ++leaf) {
      const bool occupied = indicator[leaf] != 0.0;
      cost_[L][leaf] = occupied ? weight_[L] : 0.0;
      take_[L][leaf] = occupied ? 1 : 0;
    }
    for (int k = L - 1; k >= 0; --k) {
      for (std::size_t f = 0; f < cost_[k].size(); ++f) recompute(k, f);
    }
  }

  /// Adds one leaf to the set and repairs its ancestors in O(L 2^n).
  void insert_leaf(std::size_t leaf) {
    const int L = config_.L;
    cost_[L][leaf] = weight_[L];
    take_[L][leaf] = 1;
    for (int k = L - 1; k >= 0; --k) {
      recompute(k, ancestor_flat(config_.n, L, leaf, k));
    }
  }

  [[nodiscard]] double value() const { return cost_[0][0]; }
  [[nodiscard]] double cost(int level, std::size_t flat) const {
    return cost_[level][flat];
  }
  [[nodiscard]] double children_cost(int level, std::size_t flat) const {
    double s = 0.0;
    for (std::size_t c = 0; c < config_.child_count(); ++c) {
      s += cost_[level + 1][child_flat(config_.n, level, flat, c)];
    }
    return s;
  }
  /// True when the optimal cover of this subtree is the cube itself.
  [[nodiscard]] bool takes_cube(int level, std::size_t flat) const {
    return take_[level][flat] != 0;
  }
  [[nodiscard]] const LatticeConfig& config() const { return config_; }

  [[nodiscard]] std::vector<CubeId> cover() const {
    std::vector<CubeId> out;
    collect(0, 0, out);
    return out;
  }

 private:
  void recompute(int k, std::size_t f) {
    const double s = children_cost(k, f);
    if (s <= 0.0) {
      cost_[k][f] = 0.0;
      take_[k][f] = 0;
    } else if (weight_[k] <= s + kContentTolerance) {
      cost_[k][f] = weight_[k];
      take_[k][f] = 1;
    } else {
      cost_[k][f] = s;
      take_[k][f] = 0;
    }
  }

  void collect(int k, std::size_t f, std::vector<CubeId>& out) const {
    if (cost_[k][f] <= 0.0) return;
    if (take_[k][f] != 0) {
      out.push_back(cube_from_flat(config_, k, f));
      return;
    }
    for (std::size_t c = 0; c < config_.child_count(); ++c) {
      collect(k + 1, child_flat(config_.n, k, f, c), out);
    }
  }

  LatticeConfig config_;
  std::vector<std::vector<double>> cost_;
  std::vector<std::vector<unsigned char>> take_;
  std::vector<double> weight_;
};

inline void require_indicator(const GridFunction& e) {
  if (!e.is_indicator()) {
    throw NonIndicatorError("set argument must be {0,1}-valued");
  }
}

inline void require_nonnegative(const GridFunction& f, const char* what) {
  if (!f.is_nonnegative()) {
    throw NegativityError(std::string(what) + " must be nonnegative");
  }
}

/// Exact H^d(E) for a union of leaf cells, with an optimal antichain cover.
inline ContentResult hausdorff_content(const GridFunction& e) {
  require_indicator(e);
  CoverTree tree(e.config());
  tree.build(e.values());
  return {tree.value(), tree.cover()};
}

/// A measure supported on E with mu(Q) <= l(Q)^d on every lattice cube and
/// total mass H^d(E). Mass is split top-down in proportion to the children's
/// DP costs, so mass(Q) <= cost(Q) <= l(Q)^d holds inductively.
inline GridFunction frostman_measure(const GridFunction& e) {
  require_indicator(e);
  if (e.is_zero()) throw EmptySetError("Frostman measure of the empty set");
  const auto& cfg = e.config();
  CoverTree tree(cfg);
  tree.build(e.values());

  std::vector<double> mass{tree.value()};
  for (int k = 0; k < cfg.L; ++k) {
    std::vector<double> next(cfg.cubes_at(k + 1), 0.0);
    for (std::size_t f = 0; f < mass.size(); ++f) {
      if (mass[f] <= 0.0) continue;
      const double total = tree.children_cost(k, f);
      if (total <= 0.0) continue;
      for (std::size_t c = 0; c < cfg.child_count(); ++c) {
        const std::size_t cf = child_flat(cfg.n, k, f, c);
        next[cf] = mass[f] * (tree.cost(k + 1, cf) / total);
      }
    }
    mass = std::move(next);
  }
  const double inv_volume = 1.0 / cfg.volume(cfg.L);
  for (auto& m : mass) m *= inv_volume;
  return {cfg, std::move(mass)};
}

/// Layer-cake Choquet integral of a nonnegative step function: with distinct
/// positive values t_1 < ... < t_m it equals
/// sum_i (t_i - t_{i-1}) H^d({f >= t_i}). The super-level sets are grown
/// from the top value down with one CoverTree.
inline double choquet_integral(const GridFunction& f) {
  require_nonnegative(f, "Choquet integrand");
  std::vector<std::size_t> order;
  order.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] > 0.0) order.push_back(i);
  }
  if (order.empty()) return 0.0;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return f[a] > f[b]; });

  CoverTree tree(f.config());
  double total = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double level = f[order[i]];
    while (i < order.size() && f[order[i]] == level) tree.insert_leaf(order[i++]);
    const double below = i < order.size() ? f[order[i]] : 0.0;
    if (std::isinf(level)) return kInfinity;
    total += (level - below) * tree.value();
  }
  return total;
}

/// ||f||_{L^p(H^d)}; p = infinity gives the largest leaf magnitude (every
/// nonempty union of cells has positive content).
inline double choquet_norm(const GridFunction& f, double p) {
  if (!(p > 0.0)) throw DomainError("Choquet norm needs p > 0");
  if (std::isinf(p)) return f.max_abs();
  if (p == 1.0) return choquet_integral(f.abs());
  const double integral =
      choquet_integral(f.map([p](double v) { return std::pow(std::abs(v), p); }));
  return std::pow(integral, 1.0 / p);
}

/// An admissible measure (mu(Q) <= l(Q)^d everywhere) maximizing the integral
/// of h. The constraints form a laminar family, so filling leaves greedily in
/// decreasing order of h is optimal, and the optimum equals the Choquet
/// integral of h.
inline GridFunction extremal_measure(const GridFunction& h) {
  require_nonnegative(h, "extremal measure weight");
  const auto& cfg = h.config();
  std::vector<std::vector<double>> capacity(cfg.L + 1);
  for (int k = 0; k <= cfg.L; ++k) {
    capacity[k].assign(cfg.cubes_at(k), cfg.content_weight(k));
  }
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] > 0.0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return h[a] > h[b]; });
  std::vector<double> density(cfg.leaf_count(), 0.0);
  for (std::size_t leaf : order) {
    double amount = kInfinity;
    for (int k = 0; k <= cfg.L; ++k) {
      amount = std::min(amount, capacity[k][ancestor_flat(cfg.n, cfg.L, leaf, k)]);
    }
    if (amount <= 0.0) continue;
    for (int k = 0; k <= cfg.L; ++k) {
      auto& cap = capacity[k][ancestor_flat(cfg.n, cfg.L, leaf, k)];
      cap = std::max(0.0, cap - amount);
    }
    density[leaf] = amount / cfg.volume(cfg.L);
  }
  return {cfg, std::move(density)};
}

/// Largest violation max_Q (mu(Q) - l(Q)^d) over all lattice cubes, together
/// with a cube attaining it.
struct FrostmanCheck {
  double worst_excess = -kInfinity;
  CubeId worst_cube;
};

inline FrostmanCheck frostman_excess(const GridFunction& mu) {
  require_nonnegative(mu, "measure density");
  const auto& cfg = mu.config();
  CubeSums sums(mu);
  FrostmanCheck out;
  const double vol = cfg.volume(cfg.L);
  for (int k = 0; k <= cfg.L; ++k) {
    const double w = cfg.content_weight(k);
    for (std::size_t f = 0; f < cfg.cubes_at(k); ++f) {
      const double excess = sums.at(k, f) * vol - w;
      if (excess > out.worst_excess) {
        out.worst_excess = excess;
        out.worst_cube = cube_from_flat(cfg, k, f);
      }
    }
  }
  return out;
}

/// Integral of f against the measure with density mu.
inline double integrate(const GridFunction& f, const GridFunction& mu) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * mu[i];
  return s * f.leaf_volume();
}

}  // namespace choquet
