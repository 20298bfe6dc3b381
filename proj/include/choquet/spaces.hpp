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
/// Morrey, Orlicz-Morrey and Orlicz block norms over the Choquet scale,
/// Lebesgue pairings, and the dual witness built from an admissible measure.
///
/// Associate norms are suprema of pairings over unit balls and are never
/// computed exactly; associate_lower_bound maximizes the pairing over a
/// generated family of witnesses instead.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "choquet/content.hpp"
#include "choquet/lattice.hpp"
#include "choquet/maximal.hpp"
#include "choquet/random.hpp"
#include "choquet/young.hpp"

namespace choquet {

enum class SpaceTag { morrey, orlicz_morrey, orlicz_morrey_inf, block, tiling_orlicz_morrey };

inline std::string to_string(SpaceTag tag) {
  switch (tag) {
    case SpaceTag::morrey: return "morrey";
    case SpaceTag::orlicz_morrey: return "orlicz_morrey";
    case SpaceTag::orlicz_morrey_inf: return "orlicz_morrey_inf";
    case SpaceTag::block: return "block";
    case SpaceTag::tiling_orlicz_morrey: return "tiling_orlicz_morrey";
  }
  return "unknown";
}

inline SpaceTag parse_space_tag(std::string_view name) {
  for (auto tag : {SpaceTag::morrey, SpaceTag::orlicz_morrey, SpaceTag::orlicz_morrey_inf,
                   SpaceTag::block, SpaceTag::tiling_orlicz_morrey}) {
    if (to_string(tag) == name) return tag;
  }
  throw ParseError("unknown space tag '" + std::string(name) + "'");
}

/// A norm scale with its parameters. `phi` is unused for morrey and the
/// tiling only matters for block and tiling_orlicz_morrey.
struct SpaceSpec {
  SpaceTag tag = SpaceTag::morrey;
  double p = 2.0;
  std::optional<YoungFunction> phi;
  Tiling tiling;
};

struct NormValue {
  SpaceSpec space;
  double value = 0.0;
};

/// ||mu||_{M^p(H^d)} = ||M_d mu||_{L^p(H^d)}, 1 < p <= inf.
inline double morrey_norm(const GridFunction& mu, double p) {
  if (!(p > 1.0)) throw DomainError("Morrey norm needs p > 1");
  return choquet_norm(fractional_measure_maximal(mu).values, p);
}

/// ||f||_{M^p_Phi(H^d)} = ||M_{n-d,Phi} f||_{L^p(H^d)}, 1 < p <= inf. For
/// p = inf this is sup_Q l(Q)^{n-d} ||f||_{Phi;Q}.
inline double orlicz_morrey_norm(const GridFunction& f, double p, const YoungFunction& phi) {
  if (!(p > 1.0)) throw DomainError("Orlicz-Morrey norm needs p > 1");
  const auto& cfg = f.config();
  const double alpha = cfg.n - cfg.d;
  if (std::isinf(p)) {
    const auto table = luxemburg_table(f, phi);
    double best = 0.0;
    for (int k = 0; k <= cfg.L; ++k) {
      const double scale = LatticeConfig::side_power(k, alpha);
      for (double v : table[k]) best = std::max(best, scale * v);
    }
    return best;
  }
  return choquet_norm(orlicz_fractional_maximal(f, alpha, phi).values, p);
}

/// Looks up ||f||_{Phi;Q} for each tile of t in a precomputed table.
inline std::vector<double> tile_norms(const LatticeConfig& cfg, const CubeTable& table,
                                      const Tiling& t) {
  std::vector<double> out;
  out.reserve(t.cubes.size());
  for (const auto& q : t.cubes) out.push_back(table[q.level][flat_index(cfg, q)]);
  return out;
}

/// Block norm from a table of Luxemburg norms (no tiling validation).
inline double block_norm_from_table(const LatticeConfig& cfg, const CubeTable& table,
                                    double p, const Tiling& t) {
  auto norms = tile_norms(cfg, table, t);
  if (p != 1.0) {
    for (auto& v : norms) v = std::pow(v, p);
  }
  const double integral = choquet_integral(tile_profile(cfg, t, norms));
  return p == 1.0 ? integral : std::pow(integral, 1.0 / p);
}

/// ||f||_{B^p_Phi(H^d,T)} = || sum_{Q in T} ||f||_{Phi;Q}^p 1_Q ||_{L^1(H^d)}^{1/p}.
inline double block_norm(const GridFunction& f, double p, const YoungFunction& phi,
                         const Tiling& t) {
  if (!(p >= 1.0) || std::isinf(p)) throw DomainError("block norm needs 1 <= p < inf");
  const auto& cfg = f.config();
  require_tiling(cfg, t);
  std::vector<double> norms;
  norms.reserve(t.cubes.size());
  for (const auto& q : t.cubes) norms.push_back(std::pow(luxemburg_norm(f, q, phi), p));
  const double integral = choquet_integral(tile_profile(cfg, t, norms));
  return std::pow(integral, 1.0 / p);
}

/// || sum_{Q in T} (l(Q)^{n-d} ||g||_{Phibar;Q})^{p'} 1_Q ||_{L^1(H^d)}^{1/p'};
/// p' = inf gives the largest tile value.
inline double tiling_orlicz_morrey_norm(const GridFunction& g, double pprime,
                                        const YoungFunction& phibar, const Tiling& t) {
  if (!(pprime >= 1.0)) throw DomainError("tiling Orlicz-Morrey norm needs p' >= 1");
  const auto& cfg = g.config();
  require_tiling(cfg, t);
  const double alpha = cfg.n - cfg.d;
  std::vector<double> values;
  values.reserve(t.cubes.size());
  for (const auto& q : t.cubes) {
    values.push_back(LatticeConfig::side_power(q.level, alpha) * luxemburg_norm(g, q, phibar));
  }
  if (std::isinf(pprime)) {
    double best = 0.0;
    for (double v : values) best = std::max(best, v);
    return best;
  }
  for (auto& v : values) v = std::pow(v, pprime);
  return std::pow(choquet_integral(tile_profile(cfg, t, values)), 1.0 / pprime);
}

/// Lebesgue inner product of two step functions.
inline double pairing(const GridFunction& f, const GridFunction& g) {
  if (!(f.config() == g.config())) throw ConfigError("pairing across different lattices");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
  return s * f.leaf_volume();
}

inline double norm_of(const GridFunction& g, const SpaceSpec& space) {
  auto phi = [&]() -> const YoungFunction& {
    if (!space.phi) throw ConfigError(to_string(space.tag) + " norm needs a Young function");
    return *space.phi;
  };
  switch (space.tag) {
    case SpaceTag::morrey: return morrey_norm(g.abs(), space.p);
    case SpaceTag::orlicz_morrey: return orlicz_morrey_norm(g, space.p, phi());
    case SpaceTag::orlicz_morrey_inf: return orlicz_morrey_norm(g, kInfinity, phi());
    case SpaceTag::block: return block_norm(g, space.p, phi(), space.tiling);
    case SpaceTag::tiling_orlicz_morrey:
      return tiling_orlicz_morrey_norm(g, space.p, phi(), space.tiling);
  }
  throw ConfigError("unknown space");
}

inline NormValue evaluate_norm(const GridFunction& g, const SpaceSpec& space) {
  return {space, norm_of(g, space)};
}

/// Per-tile data of a dual witness.
struct TileCertificate {
  CubeId cube;
  double luxemburg = 0.0;    // ||f||_{Phi;Q}
  double certificate = 0.0;  // l(Q)^{n-d} ||F_Q||_{Phibar;Q}
  double bound = 0.0;        // ||f||_{Phi;Q}^{p-1}
  double mass = 0.0;         // mu(Q)
};

struct DualWitness {
  GridFunction F;
  std::vector<TileCertificate> tiles;
};

/// F = sum_{Q in T} F_Q with, for g_Q = Phi'(|f| / ||f||_{Phi;Q}) on Q,
///
///   F_Q = [1 + mean_Q Phibar(g_Q)]^{-1} ||f||_{Phi;Q}^{p-1} (mu(Q)/|Q|) g_Q.
///
/// An admissible mu makes every certificate l(Q)^{n-d} ||F_Q||_{Phibar;Q}
/// at most ||f||_{Phi;Q}^{p-1}. The formula is used for every p >= 1.
inline DualWitness dual_witness(const GridFunction& f, const GridFunction& mu, double p,
                                const YoungFunction& phi, const Tiling& t) {
  const auto& cfg = f.config();
  if (!(cfg == mu.config())) throw ConfigError("function and measure on different lattices");
  if (!(p >= 1.0) || std::isinf(p)) throw DomainError("dual witness needs 1 <= p < inf");
  if (!phi.claims_delta2()) {
    throw DomainError("dual witness needs a Delta_2 Young function, got " + phi.name());
  }
  require_tiling(cfg, t);
  const auto check = frostman_excess(mu);
  if (check.worst_excess > kContentTolerance) {
    throw InadmissibleMeasureError("measure violates mu(Q) <= l(Q)^d on cube " +
                                   check.worst_cube.to_string());
  }
  const YoungFunction phibar = phi.complement();
  const double alpha = cfg.n - cfg.d;
  std::vector<double> F(cfg.leaf_count(), 0.0);
  DualWitness out;
  for (const auto& q : t.cubes) {
    TileCertificate tile;
    tile.cube = q;
    tile.mass = measure_of_cube(mu, q);
    const auto values = values_in(f, q);
    tile.luxemburg = luxemburg_norm(values, phi);
    tile.bound = std::pow(tile.luxemburg, p - 1.0);
    if (tile.luxemburg == 0.0) {
      out.tiles.push_back(std::move(tile));
      continue;
    }
    std::vector<double> slope(values.size());
    double mean_conj = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      slope[i] = phi.deriv(std::abs(values[i]) / tile.luxemburg);
      mean_conj += phibar(slope[i]);
    }
    mean_conj /= static_cast<double>(values.size());
    const double scale =
        tile.bound * (tile.mass / q.volume()) / (1.0 + mean_conj);
    std::vector<double> local(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) local[i] = scale * slope[i];
    tile.certificate = LatticeConfig::side_power(q.level, alpha) * luxemburg_norm(local, phibar);
    std::size_t i = 0;
    for_each_leaf(cfg, q, [&](std::size_t leaf) { F[leaf] = local[i++]; });
    out.tiles.push_back(std::move(tile));
  }
  out.F = GridFunction(cfg, std::move(F));
  return out;
}

/// max over generated witnesses g of pairing(|f|, |g|) / ||g||. The
/// witness sequence is a fixed prefix-stable list: 1_root, the Frostman
/// measure of supp f, the extremal measure of |f|, then a seed-determined
/// stream of cube indicators, random functions and Frostman measures of
/// random sets. `extra` witnesses are tried as well.
inline double associate_lower_bound(const GridFunction& f, const SpaceSpec& space,
                                    int witnesses, std::uint64_t seed,
                                    std::span<const GridFunction> extra = {}) {
  if (witnesses < 1) throw DomainError("associate lower bound needs at least one witness");
  const auto& cfg = f.config();
  const GridFunction af = f.abs();
  if (af.is_zero()) return 0.0;
  double best = 0.0;
  auto consider = [&](const GridFunction& g) {
    const GridFunction ag = g.abs();
    const double norm = norm_of(ag, space);
    if (!(norm > 0.0) || std::isinf(norm)) return;
    best = std::max(best, pairing(af, ag) / norm);
  };
  Rng rng(seed);
  for (int i = 0; i < witnesses; ++i) {
    if (i == 0) {
      consider(GridFunction::constant(cfg, 1.0));
    } else if (i == 1) {
      consider(frostman_measure(af.map([](double v) { return v > 0.0 ? 1.0 : 0.0; })));
    } else if (i == 2) {
      consider(extremal_measure(af));
    } else {
      switch (i % 3) {
        case 0: consider(GridFunction::indicator(cfg, random_cube(cfg, rng))); break;
        case 1: consider(random_function(cfg, rng)); break;
        default: consider(frostman_measure(random_set(cfg, rng))); break;
      }
    }
  }
  for (const auto& g : extra) consider(g);
  return best;
}

/// Greedy split descent for inf_T of a tiling functional: start from {root}
/// and repeatedly apply the single-tile split that lowers the value most.
template <typename Objective>
std::pair<Tiling, double> greedy_tiling_infimum(const LatticeConfig& cfg, Objective&& value) {
  Tiling current = Tiling::single(cfg.n);
  double current_value = value(current);
  while (true) {
    std::optional<Tiling> best;
    double best_value = current_value;
    for (std::size_t i = 0; i < current.cubes.size(); ++i) {
      if (current.cubes[i].level >= cfg.L) continue;
      Tiling candidate;
      for (std::size_t j = 0; j < current.cubes.size(); ++j) {
        if (j == i) {
          for (auto& c : children(cfg, current.cubes[i])) candidate.cubes.push_back(std::move(c));
        } else {
          candidate.cubes.push_back(current.cubes[j]);
        }
      }
      const double v = value(candidate);
      if (v < best_value) {
        best_value = v;
        best = std::move(candidate);
      }
    }
    if (!best) return {current, current_value};
    current = std::move(*best);
    current_value = best_value;
  }
}

/// inf over tilings of a tiling functional: exhaustive for L <= 3 (and at
/// most 100000 tilings), greedy split descent otherwise.
/// Number of tilings of a lattice, saturating at `cap`.
inline std::size_t tiling_count(const LatticeConfig& cfg, std::size_t cap) {
  std::size_t count = 1;
  for (int k = 0; k < cfg.L; ++k) {
    std::size_t power = 1;
    for (std::size_t c = 0; c < cfg.child_count(); ++c) {
      if (power > cap / std::max<std::size_t>(count, 1)) return cap;
      power *= count;
    }
    count = std::min(cap, power + 1);
  }
  return count;
}

template <typename Objective>
std::pair<Tiling, double> tiling_infimum(const LatticeConfig& cfg, Objective&& value,
                                         int exhaustive_max_level = 3) {
  constexpr std::size_t kMaxEnumerated = 100000;
  if (cfg.L <= exhaustive_max_level && tiling_count(cfg, kMaxEnumerated + 1) <= kMaxEnumerated) {
    std::optional<Tiling> best;
    double best_value = kInfinity;
    for (auto& t : enumerate_tilings(cfg)) {
      const double v = value(t);
      if (v < best_value) {
        best_value = v;
        best = std::move(t);
      }
    }
    return {*best, best_value};
  }
  return greedy_tiling_infimum(cfg, value);
}

}  // namespace choquet
