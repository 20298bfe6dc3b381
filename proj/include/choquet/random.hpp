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
/// Seed-deterministic generators for grid functions, sets and tilings.
/// Only the mt19937_64 bit stream is used (its sequence is fixed by the
/// standard), so instances are identical across standard libraries.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "choquet/lattice.hpp"

namespace choquet {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent seed for sub-stream `stream` of `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  int between(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

enum class FunctionLaw { uniform, lacunary, sparse, bumps };

inline CubeId random_cube(const LatticeConfig& cfg, Rng& rng, int min_level = 0) {
  const int k = rng.between(min_level, cfg.L);
  return cube_from_flat(cfg, k, rng.below(cfg.cubes_at(k)));
}

/// Nonnegative random step function drawn from the given law:
///   uniform  - i.i.d. U[0,1) leaves;
///   lacunary - 2^{-j} U[1/2,1) with j uniform in [0, L];
///   sparse   - each leaf active with a small probability;
///   bumps    - a sum of 1 to 4 weighted cube indicators.
inline GridFunction random_function(const LatticeConfig& cfg, Rng& rng, FunctionLaw law) {
  std::vector<double> v(cfg.leaf_count(), 0.0);
  switch (law) {
    case FunctionLaw::uniform:
      for (auto& x : v) x = rng.uniform();
      break;
    case FunctionLaw::lacunary:
      for (auto& x : v) x = std::ldexp(rng.uniform(0.5, 1.0), -rng.between(0, cfg.L));
      break;
    case FunctionLaw::sparse: {
      const double density = rng.uniform(0.05, 0.3);
      for (auto& x : v) {
        if (rng.bernoulli(density)) x = rng.uniform(0.1, 1.0);
      }
      v[rng.below(v.size())] = rng.uniform(0.1, 1.0);
      break;
    }
    case FunctionLaw::bumps: {
      const int count = rng.between(1, 4);
      for (int i = 0; i < count; ++i) {
        const double c = rng.uniform(0.1, 1.0);
        for_each_leaf(cfg, random_cube(cfg, rng), [&](std::size_t leaf) { v[leaf] += c; });
      }
      break;
    }
  }
  return {cfg, std::move(v)};
}

inline GridFunction random_function(const LatticeConfig& cfg, Rng& rng) {
  return random_function(cfg, rng, static_cast<FunctionLaw>(rng.below(4)));
}

/// Nonempty union of leaf cells: i.i.d. cells or a union of random cubes.
inline GridFunction random_set(const LatticeConfig& cfg, Rng& rng) {
  std::vector<double> v(cfg.leaf_count(), 0.0);
  if (rng.bernoulli(0.5)) {
    const double density = rng.uniform(0.05, 0.9);
    for (auto& x : v) x = rng.bernoulli(density) ? 1.0 : 0.0;
  } else {
    const int count = rng.between(1, 6);
    for (int i = 0; i < count; ++i) {
      for_each_leaf(cfg, random_cube(cfg, rng), [&](std::size_t leaf) { v[leaf] = 1.0; });
    }
  }
  v[rng.below(v.size())] = 1.0;
  return {cfg, std::move(v)};
}

/// Random recursive splitting from the root; the split probability is drawn
/// once per tiling.
inline Tiling random_tiling(const LatticeConfig& cfg, Rng& rng) {
  const double split = rng.uniform(0.2, 0.9);
  Tiling t;
  std::vector<CubeId> stack{CubeId::root(cfg.n)};
  while (!stack.empty()) {
    CubeId q = std::move(stack.back());
    stack.pop_back();
    if (q.level < cfg.L && rng.bernoulli(split)) {
      auto kids = children(cfg, q);
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(std::move(*it));
    } else {
      t.cubes.push_back(std::move(q));
    }
  }
  return t;
}

}  // namespace choquet
