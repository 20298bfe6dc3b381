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
/// Finite-resolution dyadic geometry inside the root cube [0,1)^n.
///
/// A lattice of depth L holds every dyadic cube 2^{-k}(j + [0,1)^n) with
/// 0 <= k <= L contained in the root. Cubes of a level are addressed by a
/// flat row-major index: coordinate 0 is the most significant, so the flat
/// index at level k is sum_i j_i * 2^{k(n-1-i)}. The leaf order of a
/// GridFunction is the flat order at level L.
///
/// Cubes larger than the root never matter for data supported in the root:
/// a cube of side 2^m (m >= 1) costs 2^{md} > 1 as a cover element, and its
/// averages and ratios are dominated by those of the root for nonnegative
/// data. Every supremum and infimum below is therefore taken over the
/// lattice only.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "choquet/error.hpp"

namespace choquet {

/// Dimension n, depth L and content exponent d of a lattice.
struct LatticeConfig {
  int n = 1;
  int L = 0;
  double d = 0.5;

  /// Dense storage bound: at most 2^24 leaves.
  static constexpr int kMaxLeafBits = 24;

  void validate() const {
    if (n < 1) throw ConfigError("dimension n must be positive");
    if (L < 0) throw ConfigError("depth L must be nonnegative");
    if (n * L > kMaxLeafBits) {
      throw ConfigError("lattice too large: n*L must not exceed " +
                        std::to_string(kMaxLeafBits));
    }
    if (!(d > 0.0 && d < static_cast<double>(n))) {
      throw ConfigError("content exponent d must satisfy 0 < d < n");
    }
  }

  [[nodiscard]] std::size_t cells_per_axis(int level) const {
    return std::size_t{1} << level;
  }
  [[nodiscard]] std::size_t cubes_at(int level) const {
    return std::size_t{1} << (n * level);
  }
  [[nodiscard]] std::size_t leaf_count() const { return cubes_at(L); }
  [[nodiscard]] std::size_t cube_count() const {
    std::size_t total = 0;
    for (int k = 0; k <= L; ++k) total += cubes_at(k);
    return total;
  }
  [[nodiscard]] std::size_t child_count() const {
    return std::size_t{1} << n;
  }

  [[nodiscard]] double side(int level) const {
    return std::ldexp(1.0, -level);
  }
  [[nodiscard]] double volume(int level) const {
    return std::ldexp(1.0, -n * level);
  }
  /// l(Q)^d for a cube of the given level.
  [[nodiscard]] double content_weight(int level) const {
    return std::exp2(-static_cast<double>(level) * d);
  }
  /// l(Q)^alpha for a cube of the given level.
  [[nodiscard]] static double side_power(int level, double alpha) {
    return std::exp2(-static_cast<double>(level) * alpha);
  }

  friend bool operator==(const LatticeConfig&, const LatticeConfig&) = default;
};

/// A dyadic cube of the lattice: level k and integer coordinates j.
struct CubeId {
  int level = 0;
  std::vector<std::int64_t> index;

  static CubeId root(int n) { return {0, std::vector<std::int64_t>(n, 0)}; }

  [[nodiscard]] int dim() const { return static_cast<int>(index.size()); }
  [[nodiscard]] double side() const { return std::ldexp(1.0, -level); }
  [[nodiscard]] double volume() const {
    return std::ldexp(1.0, -level * dim());
  }

  /// Serialized address "k:j0,j1,...".
  [[nodiscard]] std::string to_string() const {
    std::string out = std::to_string(level) + ":";
    for (std::size_t i = 0; i < index.size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(index[i]);
    }
    return out;
  }

  static CubeId parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("cube address must look like k:j0,j1,...: '" +
                       std::string(text) + "'");
    }
    CubeId q;
    auto parse_int = [&](std::string_view part, auto& out) {
      const auto* first = part.data();
      const auto* last = part.data() + part.size();
      auto [ptr, ec] = std::from_chars(first, last, out);
      if (ec != std::errc{} || ptr != last || part.empty()) {
        throw ParseError("bad integer in cube address '" + std::string(text) +
                         "'");
      }
    };
    parse_int(text.substr(0, colon), q.level);
    std::string_view rest = text.substr(colon + 1);
    while (true) {
      const auto comma = rest.find(',');
      std::int64_t value = 0;
      parse_int(rest.substr(0, comma), value);
      q.index.push_back(value);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return q;
  }

  auto operator<=>(const CubeId&) const = default;
  bool operator==(const CubeId&) const = default;
};

namespace detail {

inline std::size_t axis_mask(int level) {
  return (std::size_t{1} << level) - 1;
}

/// Coordinate i of the cube with the given flat index at `level`.
inline std::size_t coord(int n, int level, std::size_t flat, int i) {
  return (flat >> (level * (n - 1 - i))) & axis_mask(level);
}

}  // namespace detail

/// Flat index of `child` (an n-bit corner selector, bit n-1-i for axis i)
/// of the cube (level, flat).
inline std::size_t child_flat(int n, int level, std::size_t flat,
                              std::size_t child) {
  std::size_t out = 0;
  for (int i = 0; i < n; ++i) {
    const std::size_t j = detail::coord(n, level, flat, i);
    const std::size_t b = (child >> (n - 1 - i)) & 1U;
    out |= ((2 * j) | b) << ((level + 1) * (n - 1 - i));
  }
  return out;
}

/// Flat index at `level` of the ancestor of leaf `leaf` (a level-L cube).
inline std::size_t ancestor_flat(int n, int L, std::size_t leaf, int level) {
  const int shift = L - level;
  std::size_t out = 0;
  for (int i = 0; i < n; ++i) {
    const std::size_t j = detail::coord(n, L, leaf, i) >> shift;
    out |= j << (level * (n - 1 - i));
  }
  return out;
}

inline void check_cube(const LatticeConfig& cfg, const CubeId& q) {
  if (q.dim() != cfg.n) {
    throw ConfigError("cube " + q.to_string() + " has wrong dimension");
  }
  if (q.level < 0 || q.level > cfg.L) {
    throw ConfigError("cube " + q.to_string() + " outside lattice levels");
  }
  const auto limit = static_cast<std::int64_t>(cfg.cells_per_axis(q.level));
  for (auto j : q.index) {
    if (j < 0 || j >= limit) {
      throw ConfigError("cube " + q.to_string() + " outside the root cube");
    }
  }
}

inline std::size_t flat_index(const LatticeConfig& cfg, const CubeId& q) {
  check_cube(cfg, q);
  std::size_t out = 0;
  for (int i = 0; i < cfg.n; ++i) {
    out |= static_cast<std::size_t>(q.index[i]) << (q.level * (cfg.n - 1 - i));
  }
  return out;
}

inline CubeId cube_from_flat(const LatticeConfig& cfg, int level,
                             std::size_t flat) {
  CubeId q{level, std::vector<std::int64_t>(cfg.n)};
  for (int i = 0; i < cfg.n; ++i) {
    q.index[i] = static_cast<std::int64_t>(detail::coord(cfg.n, level, flat, i));
  }
  return q;
}

/// True when `inner` is contained in (or equal to) `outer`.
inline bool contains(const CubeId& outer, const CubeId& inner) {
  if (inner.level < outer.level || inner.dim() != outer.dim()) return false;
  const int shift = inner.level - outer.level;
  for (int i = 0; i < outer.dim(); ++i) {
    if ((inner.index[i] >> shift) != outer.index[i]) return false;
  }
  return true;
}

inline CubeId parent(const CubeId& q) {
  if (q.level == 0) throw LevelOverflowError("the root has no parent");
  CubeId p{q.level - 1, q.index};
  for (auto& j : p.index) j >>= 1;
  return p;
}

/// The 2^n cubes of the next level partitioning q.
inline std::vector<CubeId> children(const LatticeConfig& cfg, const CubeId& q) {
  check_cube(cfg, q);
  if (q.level >= cfg.L) {
    throw LevelOverflowError("cube " + q.to_string() +
                             " is at the finest level L=" +
                             std::to_string(cfg.L));
  }
  const std::size_t flat = flat_index(cfg, q);
  std::vector<CubeId> out;
  out.reserve(cfg.child_count());
  for (std::size_t c = 0; c < cfg.child_count(); ++c) {
    out.push_back(
        cube_from_flat(cfg, q.level + 1, child_flat(cfg.n, q.level, flat, c)));
  }
  return out;
}

/// Calls fn(leaf) for every leaf cell inside q, in increasing leaf order.
template <typename Fn>
void for_each_leaf(const LatticeConfig& cfg, const CubeId& q, Fn&& fn) {
  check_cube(cfg, q);
  const int shift = cfg.L - q.level;
  const std::size_t span = std::size_t{1} << shift;
  std::vector<std::size_t> offset(cfg.n, 0);
  while (true) {
    std::size_t leaf = 0;
    for (int i = 0; i < cfg.n; ++i) {
      const std::size_t j =
          (static_cast<std::size_t>(q.index[i]) << shift) + offset[i];
      leaf |= j << (cfg.L * (cfg.n - 1 - i));
    }
    fn(leaf);
    int axis = cfg.n - 1;
    while (axis >= 0 && ++offset[axis] == span) {
      offset[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
}

inline std::vector<CubeId> all_cubes(const LatticeConfig& cfg) {
  std::vector<CubeId> out;
  out.reserve(cfg.cube_count());
  for (int k = 0; k <= cfg.L; ++k) {
    for (std::size_t f = 0; f < cfg.cubes_at(k); ++f) {
      out.push_back(cube_from_flat(cfg, k, f));
    }
  }
  return out;
}

/// A real step function constant on the leaf cells of the lattice. Serves as
/// set indicator, as function and as the density of a measure
/// (mu(Q) = sum of the values in Q times the leaf volume).
class GridFunction {
 public:
  GridFunction() = default;

  GridFunction(LatticeConfig cfg, std::vector<double> values)
      : config_(cfg), values_(std::move(values)) {
    config_.validate();
    if (values_.size() != config_.leaf_count()) {
      throw ConfigError("grid function needs " +
                        std::to_string(config_.leaf_count()) +
                        " leaf values, got " + std::to_string(values_.size()));
    }
  }

  static GridFunction constant(const LatticeConfig& cfg, double c) {
    return {cfg, std::vector<double>(cfg.leaf_count(), c)};
  }
  static GridFunction zeros(const LatticeConfig& cfg) { return constant(cfg, 0); }

  /// Indicator of a union of lattice cubes.
  static GridFunction indicator(const LatticeConfig& cfg,
                                std::span<const CubeId> cubes) {
    std::vector<double> v(cfg.leaf_count(), 0.0);
    for (const auto& q : cubes) {
      for_each_leaf(cfg, q, [&](std::size_t leaf) { v[leaf] = 1.0; });
    }
    return {cfg, std::move(v)};
  }
  static GridFunction indicator(const LatticeConfig& cfg, const CubeId& q) {
    return indicator(cfg, std::span<const CubeId>(&q, 1));
  }

  [[nodiscard]] const LatticeConfig& config() const { return config_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  double operator[](std::size_t leaf) const { return values_[leaf]; }
  [[nodiscard]] double leaf_volume() const { return config_.volume(config_.L); }

  [[nodiscard]] bool is_indicator() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](double v) { return v == 0.0 || v == 1.0; });
  }
  [[nodiscard]] bool is_nonnegative() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](double v) { return v >= 0.0; });
  }
  [[nodiscard]] bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](double v) { return v == 0.0; });
  }
  [[nodiscard]] double max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  template <typename Fn>
  [[nodiscard]] GridFunction map(Fn&& fn) const {
    std::vector<double> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), fn);
    return {config_, std::move(v)};
  }
  [[nodiscard]] GridFunction abs() const {
    return map([](double v) { return std::abs(v); });
  }
  [[nodiscard]] GridFunction scaled(double c) const {
    return map([c](double v) { return c * v; });
  }

  friend GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    require_same(a, b);
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] + b.values_[i];
    return {a.config_, std::move(v)};
  }
  /// Pointwise product.
  friend GridFunction operator*(const GridFunction& a, const GridFunction& b) {
    require_same(a, b);
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] * b.values_[i];
    return {a.config_, std::move(v)};
  }

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  static void require_same(const GridFunction& a, const GridFunction& b) {
    if (!(a.config_ == b.config_)) {
      throw ConfigError("grid functions live on different lattices");
    }
  }

  LatticeConfig config_;
  std::vector<double> values_;
};

/// Per-level sums of a GridFunction's leaf values over every lattice cube.
class CubeSums {
 public:
  explicit CubeSums(const GridFunction& f) : config_(f.config()) {
    const int L = config_.L;
    sums_.resize(L + 1);
    sums_[L].assign(f.values().begin(), f.values().end());
    for (int k = L - 1; k >= 0; --k) {
      sums_[k].assign(config_.cubes_at(k), 0.0);
      for (std::size_t p = 0; p < sums_[k].size(); ++p) {
        double s = 0.0;
        for (std::size_t c = 0; c < config_.child_count(); ++c) {
          s += sums_[k + 1][child_flat(config_.n, k, p, c)];
        }
        sums_[k][p] = s;
      }
    }
  }

  [[nodiscard]] double at(int level, std::size_t flat) const {
    return sums_[level][flat];
  }
  [[nodiscard]] double sum(const CubeId& q) const {
    return sums_[q.level][flat_index(config_, q)];
  }
  /// Mean of the leaf values in the cube.
  [[nodiscard]] double mean(int level, std::size_t flat) const {
    return sums_[level][flat] / static_cast<double>(config_.cubes_at(config_.L - level));
  }

 private:
  LatticeConfig config_;
  std::vector<std::vector<double>> sums_;
};

/// Mean of f over the leaves inside q, i.e. |Q|^{-1} * integral of f over Q.
inline double cell_average(const GridFunction& f, const CubeId& q) {
  double s = 0.0;
  std::size_t count = 0;
  for_each_leaf(f.config(), q, [&](std::size_t leaf) {
    s += f[leaf];
    ++count;
  });
  return s / static_cast<double>(count);
}

/// mu(Q) for a nonnegative density mu.
inline double measure_of_cube(const GridFunction& mu, const CubeId& q) {
  if (!mu.is_nonnegative()) {
    throw NegativityError("measure density has a negative cell value");
  }
  double s = 0.0;
  for_each_leaf(mu.config(), q, [&](std::size_t leaf) { s += mu[leaf]; });
  return s * mu.leaf_volume();
}

/// A finite set of lattice cubes meant to partition the root.
struct Tiling {
  std::vector<CubeId> cubes;

  static Tiling single(int n) { return {{CubeId::root(n)}}; }
  static Tiling leaves(const LatticeConfig& cfg) {
    Tiling t;
    for (std::size_t f = 0; f < cfg.leaf_count(); ++f) {
      t.cubes.push_back(cube_from_flat(cfg, cfg.L, f));
    }
    return t;
  }

  bool operator==(const Tiling&) const = default;
};

struct TilingReport {
  bool ok = true;
  std::optional<std::size_t> leaf;  // first offending leaf
  int coverage = 1;                 // how often the offending leaf is covered
  std::string message;
};

inline TilingReport validate_tiling(const LatticeConfig& cfg, const Tiling& t) {
  std::vector<int> count(cfg.leaf_count(), 0);
  for (const auto& q : t.cubes) {
    try {
      check_cube(cfg, q);
    } catch (const ConfigError& e) {
      return {false, std::nullopt, 0, e.what()};
    }
    for_each_leaf(cfg, q, [&](std::size_t leaf) { ++count[leaf]; });
  }
  for (std::size_t leaf = 0; leaf < count.size(); ++leaf) {
    if (count[leaf] != 1) {
      const auto cell = cube_from_flat(cfg, cfg.L, leaf);
      return {false, leaf, count[leaf],
              std::string(count[leaf] == 0 ? "under" : "over") +
                  "-covered cell " + cell.to_string() + " (covered " +
                  std::to_string(count[leaf]) + " times)"};
    }
  }
  return {};
}

inline void require_tiling(const LatticeConfig& cfg, const Tiling& t) {
  auto report = validate_tiling(cfg, t);
  if (!report.ok) throw InvalidTilingError(report.message);
}

/// Step function taking value[i] on tile t.cubes[i].
inline GridFunction tile_profile(const LatticeConfig& cfg, const Tiling& t,
                                 std::span<const double> tile_values) {
  std::vector<double> v(cfg.leaf_count(), 0.0);
  for (std::size_t i = 0; i < t.cubes.size(); ++i) {
    for_each_leaf(cfg, t.cubes[i],
                  [&](std::size_t leaf) { v[leaf] += tile_values[i]; });
  }
  return {cfg, std::move(v)};
}

/// Every tiling of the root by cubes of level <= cfg.L. The count grows like
/// a tower (26 for n=1, L=3; 83522 for n=2, L=3), so callers keep L small.
inline std::vector<Tiling> enumerate_tilings(const LatticeConfig& cfg) {
  std::function<std::vector<std::vector<CubeId>>(const CubeId&)> rec =
      [&](const CubeId& q) {
        std::vector<std::vector<CubeId>> out{{q}};
        if (q.level == cfg.L) return out;
        std::vector<std::vector<CubeId>> combos{{}};
        for (const auto& c : children(cfg, q)) {
          const auto sub = rec(c);
          std::vector<std::vector<CubeId>> next;
          next.reserve(combos.size() * sub.size());
          for (const auto& a : combos) {
            for (const auto& b : sub) {
              auto merged = a;
              merged.insert(merged.end(), b.begin(), b.end());
              next.push_back(std::move(merged));
            }
          }
          combos = std::move(next);
        }
        for (auto& c : combos) out.push_back(std::move(c));
        return out;
      };
  std::vector<Tiling> out;
  for (auto& cubes : rec(CubeId::root(cfg.n))) out.push_back({std::move(cubes)});
  return out;
}

}  // namespace choquet
