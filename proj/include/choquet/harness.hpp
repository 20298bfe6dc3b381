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
/// Randomized verification suites.
///
/// A suite is a list of checks and a trial function. Trial i draws its
/// instance from derive_seed(seed, i) and returns one measurement per check
/// (NaN when a check does not apply to that instance). Checks come in three
/// kinds:
///
///   upper_bound - every measurement must be <= bound + tolerance;
///   finite      - every measurement must be finite (cited-only constants,
///                 whose size is recorded as the empirical constant);
///   recorded    - reported, never asserted.
///
/// Trials run on up to CHOQUET_THREADS workers; results are stored by trial
/// index and reduced in index order, so reports do not depend on
/// scheduling.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "choquet/content.hpp"
#include "choquet/io.hpp"
#include "choquet/lattice.hpp"
#include "choquet/maximal.hpp"
#include "choquet/random.hpp"
#include "choquet/spaces.hpp"
#include "choquet/sparse.hpp"
#include "choquet/young.hpp"

namespace choquet {

enum class CheckKind { upper_bound, finite, recorded };

/// Which extreme of the measurements is the empirical constant.
enum class Extreme { max, min };

struct CheckSpec {
  std::string name;
  CheckKind kind = CheckKind::upper_bound;
  double bound = 1.0;
  double tolerance = 1e-9;
  Extreme extreme = Extreme::max;
};

struct CheckSummary {
  CheckSpec spec;
  std::size_t samples = 0;
  double worst = -kInfinity;  // largest measurement
  double min = kInfinity;     // smallest measurement
  bool pass = true;
  std::optional<Json> counterexample;

  [[nodiscard]] double empirical_constant() const {
    if (samples == 0) return 0.0;
    return spec.extreme == Extreme::max ? worst : min;
  }
};

struct SuiteConfig {
  std::string name;
  int trials = 100;
  LatticeConfig lattice{1, 5, 0.5};
  std::uint64_t seed = 42;
  int threads = 0;  // 0: CHOQUET_THREADS or hardware concurrency
};

struct VerificationReport {
  SuiteConfig config;
  int trials_run = 0;
  std::vector<CheckSummary> checks;  // checks[0] is the headline
  Json metrics = Json::object();

  [[nodiscard]] bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  }
  [[nodiscard]] const CheckSummary& headline() const { return checks.front(); }
  [[nodiscard]] const CheckSummary* check(std::string_view name) const {
    for (const auto& c : checks) {
      if (c.spec.name == name) return &c;
    }
    return nullptr;
  }
};

inline Json bound_json(const CheckSpec& spec) {
  if (spec.kind != CheckKind::upper_bound) return nullptr;
  return spec.bound;
}

inline std::string to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::upper_bound: return "upper_bound";
    case CheckKind::finite: return "finite";
    case CheckKind::recorded: return "recorded";
  }
  return "unknown";
}

/// Non-finite doubles have no JSON form; they are written as strings.
inline Json number_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline Json to_json(const CheckSummary& c) {
  Json j{{"name", c.spec.name},
         {"kind", to_string(c.spec.kind)},
         {"bound", bound_json(c.spec)},
         {"tolerance", c.spec.tolerance},
         {"samples", c.samples},
         {"worst", c.samples ? number_json(c.worst) : Json(nullptr)},
         {"min", c.samples ? number_json(c.min) : Json(nullptr)},
         {"empirical_constant", number_json(c.empirical_constant())},
         {"status", c.pass ? "pass" : "fail"}};
  j["counterexample"] = c.counterexample ? *c.counterexample : Json(nullptr);
  return j;
}

inline Json to_json(const VerificationReport& r) {
  const auto& head = r.headline();
  std::optional<Json> counterexample;
  for (const auto& c : r.checks) {
    if (!c.pass && c.counterexample) {
      counterexample = c.counterexample;
      break;
    }
  }
  Json j{{"suite", r.config.name},
         {"trials", r.trials_run},
         {"L", r.config.lattice.L},
         {"seed", r.config.seed},
         {"n", r.config.lattice.n},
         {"d", r.config.lattice.d},
         {"bound", bound_json(head.spec)},
         {"worst_ratio", head.samples ? number_json(head.worst) : Json(nullptr)},
         {"empirical_constant", number_json(head.empirical_constant())},
         {"tolerance", head.spec.tolerance},
         {"status", r.pass() ? "pass" : "fail"}};
  j["counterexample"] = counterexample ? *counterexample : Json(nullptr);
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  j["metrics"] = r.metrics;
  return j;
}

struct TrialOutput {
  std::vector<double> values;  // one per check, NaN = not applicable
  Json instance;
};

inline constexpr double kNotApplicable = std::numeric_limits<double>::quiet_NaN();

struct Suite {
  std::vector<CheckSpec> checks;
  /// Number of trials actually run for a requested count.
  std::function<int(const SuiteConfig&)> trial_count;
  std::function<TrialOutput(const LatticeConfig&, std::uint64_t seed, int index)> trial;
  std::function<Json(const SuiteConfig&)> metrics;
};

inline int worker_count(int requested) {
  int workers = requested;
  if (workers <= 0) {
    workers = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("CHOQUET_THREADS")) {
      const int cap = std::atoi(env);
      if (cap > 0) workers = std::min(workers, cap);
    }
  }
  return std::max(1, workers);
}

/// Runs fn(i) for i in [0, count) on up to `workers` threads.
template <typename Fn>
void parallel_for(int count, int workers, Fn&& fn) {
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace suites {

using std::vector;

inline double safe_ratio(double num, double den) {
  if (den > 0.0) return num / den;
  return num > 0.0 ? kInfinity : 0.0;
}

inline Json instance_json(const LatticeConfig& cfg) { return Json{{"lattice", to_json(cfg)}}; }

inline GridFunction random_density(const LatticeConfig& cfg, Rng& rng) {
  if (rng.bernoulli(0.5)) return frostman_measure(random_set(cfg, rng));
  return random_function(cfg, rng);
}

inline double conjugate_exponent(double p) {
  return p == 1.0 ? kInfinity : p / (p - 1.0);
}

/// Per-cube minimum of a grid function, level by level.
inline CubeTable cube_minima(const GridFunction& f) {
  const auto& cfg = f.config();
  CubeTable out(cfg.L + 1);
  out[cfg.L].assign(f.values().begin(), f.values().end());
  for (int k = cfg.L - 1; k >= 0; --k) {
    out[k].assign(cfg.cubes_at(k), kInfinity);
    for (std::size_t q = 0; q < out[k].size(); ++q) {
      for (std::size_t c = 0; c < cfg.child_count(); ++c) {
        out[k][q] = std::min(out[k][q], out[k + 1][child_flat(cfg.n, k, q, c)]);
      }
    }
  }
  return out;
}

inline int requested(const SuiteConfig& c) { return c.trials; }

// ---------------------------------------------------------------------------

inline Suite adams() {
  Suite s;
  s.checks = {{"adams_ratio", CheckKind::upper_bound, 1.0, 1e-9}};
  s.trial_count = requested;
  s.trial = [](const LatticeConfig& cfg, std::uint64_t seed, int) {
    Rng rng(seed);
    const auto f = random_function(cfg, rng);
    const auto mu = random_density(cfg, rng);
    const auto md = fractional_measure_maximal(mu).values;
    const double lhs = integrate(f, mu);
    const double rhs = choquet_integral(f * md);
    auto inst = instance_json(cfg);
    inst["f"] = to_json(f)["values"];
    inst["mu"] = to_json(mu)["values"];
    return TrialOutput{{safe_ratio(lhs, rhs)}, std::move(inst)};
  };
  return s;
}

inline Suite simple_trick() {
  Suite s;
  s.checks = {{"cube_ratio_vs_min_Md", CheckKind::upper_bound, 1.0, 1e-9}};
  s.trial_count = requested;
  s.trial = [](const LatticeConfig& cfg, std::uint64_t seed, int) {
    Rng rng(seed);
    const auto mu = random_density(cfg, rng);
    const auto md = fractional_measure_maximal(mu).values;
    const auto minima = cube_minima(md);
    CubeSums sums(mu);
    double worst = 0.0;
    for (int k = 0; k <= cfg.L; ++k) {
      const double inv_weight = std::exp2(k * cfg.d);
      for (std::size_t q = 0; q < cfg.cubes_at(k); ++q) {
        const double ratio = sums.at(k, q) * mu.leaf_volume() * inv_weight;
        worst = std::max(worst, safe_ratio(ratio, minima[k][q]));
      }
    }
    auto inst = instance_json(cfg);
    inst["mu"] = to_json(mu)["values"];
    return TrialOutput{{worst}, std::move(inst)};
  };
  return s;
}

inline Suite triangle() {
  Suite s;
  s.checks = {{"triangle_ratio", CheckKind::upper_bound, 1.0, 1e-9}};
  s.trial_count = requested;
  s.trial = [](const LatticeConfig& cfg, std::uint64_t seed, int index) {
    Rng rng(seed);
    constexpr double kExponents[] = {1.0, 1.5, 2.0, 4.0};
    const double p = kExponents[index % 4];
    const auto f = random_function(cfg, rng);
    const auto g = random_function(cfg, rng);
    const double ratio =
        safe_ratio(choquet_norm(f + g, p), choquet_norm(f, p) + choquet_norm(g, p));
    auto inst = instance_json(cfg);
    inst["p"] = p;
    inst["f"] = to_json(f)["values"];
    inst["g"] = to_json(g)["values"];
    return TrialOutput{{ratio}, std::move(inst)};
  };
  return s;
}

inline Suite hoelder() {
  Suite s;
  s.checks = {{"hoelder_ratio", CheckKind::upper_bound, 1.0, 1e-9}};
  s.trial_count = requested;
  s.trial = [](const LatticeConfig& cfg, std::uint64_t seed, int index) {
    Rng rng(seed);
    constexpr double kExponents[] = {1.0, 2.0, 4.0};
    const double p = kExponents[index % 3];
    const auto f = random_function(cfg, rng);
    const auto g = random_function(cfg, rng);
    const double ratio = safe_ratio(choquet_integral(f * g),
                                    choquet_norm(f, p) * choquet_norm(g, conjugate_exponent(p)));
    auto inst = instance_json(cfg);
    inst["p"] = p;
    inst["f"] = to_json(f)["values"];
    inst["g"] = to_json(g)["values"];
    return TrialOutput{{ratio}, std::move(inst)};
  };
  return s;
}

inline Suite frostman_duality() {
  Suite s;
  s.checks = {{"mass_minus_content", CheckKind::upper_bound, 0.0, 1e-10},
              {"cube_constraint_excess", CheckKind::upper_bound, 0.0, 1e-12},
              {"cover_cost_minus_content", CheckKind::upper_bound, 0.0, 1e-12},
              {"cover_and_support_violations", CheckKind::upper_bound, 0.0, 0.0},
              {"extremal_pairing_minus_choquet", CheckKind::upper_bound, 0.0, 1e-10}};
  s.trial_count = requested;
  s.trial = [](const LatticeConfig& cfg, std::uint64_t seed, int) {
    Rng rng(seed);
    const auto e = random_set(cfg, rng);
    const auto content = hausdorff_content(e);
    const auto mu = frostman_measure(e);
    double mass = 0.0;
    for (double v : mu.values()) mass += v;
    mass *= mu.leaf_volume();

    double cover_cost = 0.0;
    vector<int> covered(cfg.leaf_count(), 0);
    for (const auto& q : content.optimal_cover) {
      cover_cost += cfg.content_weight(q.level);
      for_each_leaf(cfg, q, [&](std::size_t leaf) { ++covered[leaf]; });
    }
    double violations = 0.0;
    for (std::size_t i = 0; i < cfg.leaf_count(); ++i) {
      if (e[i] != 0.0 && covered[i] != 1) violations += 1.0;  // uncovered or overlap
      if (e[i] == 0.0 && mu[i] != 0.0) violations += 1.0;     // mass off the set
    }
    const auto h = random_function(cfg, rng);
    const double extremal = integrate(h, extremal_measure(h));
    const double choquet = choquet_integral(h);

    auto inst = instance_json(cfg);
    inst["E"] = to_json(e)["values"];
    return TrialOutput{{std::abs(mass - content.value),
                        frostman_excess(mu).worst_excess,
                        std::abs(cover_cost - content.value),
                        violations,
                        std::abs(extremal - choquet) / std::max(1.0, choquet)},
                       std::move(inst)};
  };
  return s;
}

inline Suite young_suite() {
  Suite s;
  s.checks = {{"normalization_residual", CheckKind::upper_bound, 0.0, 1e-8},
              {"young_equality_closed_form", CheckKind::upper_bound, 0.0, 1e-8},
              {"young_equality_numeric", CheckKind::upper_bound, 0.0, 1e-6},
              {"orlicz_hoelder_ratio", CheckKind::upper_bound, 2.0, 1e-9},
              {"amemiya_lower_ratio", CheckKind::upper_bound, 1.0, 1e-9},
              {"amemiya_upper_ratio", CheckKind::upper_bound, 2.0, 1e-9},
              {"modular_branch_small_excess", CheckKind::upper_bound, 0.0, 1e-8},
              {"modular_branch_large_excess", CheckKind::upper_bound, 0.0, 1e-8},
              {"modular_max_bound_excess", CheckKind::upper_bound, 0.0, 1e-8},
              {"young_inequality_excess", CheckKind::upper_bound, 0.0, 1e-9},
              {"convexity_scaling_excess", CheckKind::upper_bound, 0.0, 1e-9}};
  s.trial_count = requested;
  s.trial = [](const LatticeConfig& cfg, std::uint64_t seed, int index) {
    Rng rng(seed);
    vector<double> out(11, 0.0);
    const double p = rng.uniform(1.2, 4.0);
    const YoungFunction power = YoungFunction::power(p);
    const YoungFunction llogl = YoungFunction::llogl();
    const YoungFunction expm1 = YoungFunction::expm1();
    const vector<std::pair<YoungFunction, YoungFunction>> pairs = {
        {power, power.complement()}, {llogl, llogl.complement()}};

    const auto f = random_function(cfg, rng);
    const auto g = random_function(cfg, rng);
    const auto q = random_cube(cfg, rng);
    const auto fv = values_in(f, q);
    const auto gv = values_in(g, q);

    for (const auto& [phi, phibar] : pairs) {
      const double norm = luxemburg_norm(fv, phi);
      if (norm > 0.0) out[0] = std::max(out[0], std::abs(phi_mean(fv, phi, norm) - 1.0));

      vector<double> prod(fv.size());
      for (std::size_t i = 0; i < fv.size(); ++i) prod[i] = fv[i] * gv[i];
      double mean_prod = 0.0;
      for (double v : prod) mean_prod += v;
      mean_prod /= static_cast<double>(prod.size());
      out[3] = std::max(out[3], safe_ratio(mean_prod, norm * luxemburg_norm(gv, phibar)));

      const double gnorm = luxemburg_norm(gv, phibar);
      if (gnorm > 0.0) {
        const double amemiya = amemiya_infimum(gv, phibar);
        out[4] = std::max(out[4], gnorm / amemiya);
        out[5] = std::max(out[5], amemiya / gnorm);
      }
      for (int i = 0; i < 8; ++i) {
        const double t = rng.uniform(0.0, 6.0);
        const double u = rng.uniform(0.0, 6.0);
        out[9] = std::max(out[9], (u * t - phi(t) - phibar(u)) / std::max(1.0, u * t));
        const double theta = rng.uniform(0.0, 3.0);
        const double scaled = phi(theta * t);
        const double excess = theta < 1.0 ? scaled - theta * phi(t) : theta * phi(t) - scaled;
        out[10] = std::max(out[10], excess / std::max(1.0, std::abs(scaled)));
      }
    }

    // Young's equality with closed-form and numeric conjugates.
    const double t = rng.uniform(0.05, 5.0);
    out[1] = std::max(young_equality_residual(power, t), young_equality_residual(expm1, t));
    if (index % 4 == 0) {
      out[2] = std::max(
          young_equality_residual(llogl, t, YoungFunction::numeric_conjugate(llogl)),
          young_equality_residual(expm1, t, YoungFunction::numeric_conjugate(expm1)));
    } else {
      out[2] = kNotApplicable;
    }

    // Norm against modular on the root (unit volume), scaled to reach both
    // branches: norm <= 1 gives modular <= norm, otherwise norm <= modular.
    out[6] = kNotApplicable;
    out[7] = kNotApplicable;
    const double scale = std::exp2(rng.uniform(-3.0, 3.0));
    const auto h = f.scaled(scale);
    for (const auto& phi : {YoungFunction::power(2.0), llogl}) {
      const double norm = luxemburg_norm(h.values(), phi);
      const double modular = phi_mean(h.values(), phi, 1.0);
      if (norm <= 1.0) {
        const double excess = modular - norm;
        out[6] = std::isnan(out[6]) ? excess : std::max(out[6], excess);
      } else {
        const double excess = norm - modular;
        out[7] = std::isnan(out[7]) ? excess : std::max(out[7], excess);
      }
      out[8] = std::max(out[8], norm - std::max(1.0, modular));
    }

    auto inst = instance_json(cfg);
    inst["p"] = p;
    inst["cube"] = q.to_string();
    inst["f"] = to_json(f)["values"];
    inst["g"] = to_json(g)["values"];
    inst["t"] = t;
    inst["scale"] = scale;
    return TrialOutput{std::move(out), std::move(inst)};
  };
  s.metrics = [](const SuiteConfig&) {
    const auto llogl = YoungFunction::llogl();
    const auto numeric = YoungFunction::numeric_conjugate(llogl);
    const auto canonical = llogl.complement();
    const auto range = ratio_range(canonical, numeric, 1.0 + 1e-3, 30.0);
    Json m;
    m["expm1_over_numeric_llogl_conjugate"] = {{"t_range", {1.0 + 1e-3, 30.0}},
                                               {"min", range.min},
                                               {"max", range.max}};
    auto growth = [](const YoungFunction& phi) {
      return Json{{"delta2", check_delta2(phi).holds},
                  {"nabla2", check_nabla2(phi).holds},
                  {"delta2_large_t", check_delta2(phi, 1.0).holds},
                  {"nabla2_large_t", check_nabla2(phi, 1.0).holds}};
    };
    m["growth_conditions"] = {{"identity", growth(YoungFunction::identity())},
                              {"power:2", growth(YoungFunction::power(2.0))},
                              {"llogl", growth(llogl)},
                              {"expm1", growth(YoungFunction::expm1())}};
    return m;
  };
  return s;
}

inline Suite verification_ineq() {
  Suite s;
  s.checks = {{"verification_ratio", CheckKind::upper_bound, 2.0, 1e-8},
              {"tile_sum_over_amemiya", CheckKind::upper_bound, 1.0, 1e-8},
              {"amemiya_over_norm", CheckKind::upper_bound, 2.0, 1e-8}};
  s.trial_count = requested;
  s.trial = [](const LatticeConfig& cfg, std::uint64_t seed, int index) {
    Rng rng(seed);
    const auto g = random_function(cfg, rng);
    const auto tiling = random_tiling(cfg, rng);
    const YoungFunction phibar = index % 2 == 0 ? YoungFunction::power(rng.uniform(1.2, 4.0)).complement()
                                                : YoungFunction::expm1();
    const auto table = luxemburg_table(g, phibar);
    vector<double> out(3, 0.0);
    for (const auto& q0 : all_cubes(cfg)) {
      double tile_sum = 0.0;
      for (const auto& q : tiling.cubes) {
        if (contains(q0, q)) tile_sum += q.volume() * table[q.level][flat_index(cfg, q)];
      }
      const double norm = table[q0.level][flat_index(cfg, q0)];
      if (tile_sum <= 0.0 || norm <= 0.0) continue;
      out[0] = std::max(out[0], tile_sum / (q0.volume() * norm));
      const double amemiya = amemiya_infimum(values_in(g, q0), phibar);
      out[1] = std::max(out[1], tile_sum / (q0.volume() * amemiya));
      out[2] = std::max(out[2], amemiya / norm);
    }
    auto inst = instance_json(cfg);
    inst["phibar"] = phibar.name();
    inst["g"] = to_json(g)["values"];
    inst["tiling"] = to_json(tiling);
    return TrialOutput{std::move(out), std::move(inst)};
  };
  return s;
}

inline Suite thm31_first() {
  Suite s;
  s.checks = {{"chain_ratio", CheckKind::upper_bound, 4.0, 1e-8},
              {"orlicz_hoelder_step_ratio", CheckKind::upper_bound, 2.0, 1e-8}};
  s.trial_count = requested;
  s.trial = [](const LatticeConfig& cfg, std::uint64_t seed, int index) {
    Rng rng(seed);
    const double p = index % 2 == 0 ? 1.0 : 2.0;
    const YoungFunction phi =
        (index / 2) % 2 == 0 ? YoungFunction::power(rng.uniform(1.5, 3.0)) : YoungFunction::llogl();
    const YoungFunction phibar = phi.complement();
    const auto f = random_function(cfg, rng);
    const auto g = random_function(cfg, rng);
    const auto tiling = random_tiling(cfg, rng);
    const double lhs = pairing(f, g);
    const double block = block_norm(f, p, phi, tiling);
    const double maximal_norm = choquet_norm(
        orlicz_fractional_maximal(g, cfg.n - cfg.d, phibar).values, conjugate_exponent(p));
    double step = 0.0;
    for (const auto& q : tiling.cubes) {
      step += q.volume() * luxemburg_norm(f, q, phi) * luxemburg_norm(g, q, phibar);
    }
    auto inst = instance_json(cfg);
    inst["p"] = p;
    inst["phi"] = phi.name();
    inst["f"] = to_json(f)["values"];
    inst["g"] = to_json(g)["values"];
    inst["tiling"] = to_json(tiling);
    return TrialOutput{{safe_ratio(lhs, block * maximal_norm), safe_ratio(lhs, step)},
                       std::move(inst)};
  };
  return s;
}

inline Suite thm31_witness() {
  Suite s;
  s.checks = {{"certificate_excess", CheckKind::upper_bound, 0.0, 1e-8},
              {"certificate_ratio", CheckKind::recorded, 1.0, 0.0},
              {"pairing_identity_residual", CheckKind::upper_bound, 0.0, 1e-8}};
  s.trial_count = requested;
  s.trial = [](const LatticeConfig& cfg, std::uint64_t seed, int index) {
    Rng rng(seed);
    constexpr double p = 2.0;
    const bool power = index % 2 == 0;
    const YoungFunction phi = power ? YoungFunction::power(rng.uniform(1.5, 3.0)) : YoungFunction::llogl();
    const auto f = random_function(cfg, rng);
    const auto mu = frostman_measure(random_set(cfg, rng));
    const auto tiling = random_tiling(cfg, rng);
    const auto witness = dual_witness(f, mu, p, phi, tiling);
    double excess = -kInfinity;
    double ratio = 0.0;
    double target = 0.0;
    for (const auto& tile : witness.tiles) {
      if (tile.luxemburg == 0.0) continue;
      excess = std::max(excess, tile.certificate - tile.bound);
      ratio = std::max(ratio, tile.certificate / tile.bound);
      target += std::pow(tile.luxemburg, p) * tile.mass;
    }
    // sum ||f||^p mu(Q) = integral |f| F needs the exact conjugate pair.
    double identity = kNotApplicable;
    if (power) {
      identity = std::abs(target - pairing(f.abs(), witness.F)) / std::max(1.0, target);
    }
    auto inst = instance_json(cfg);
    inst["phi"] = phi.name();
    inst["f"] = to_json(f)["values"];
    inst["mu"] = to_json(mu)["values"];
    inst["tiling"] = to_json(tiling);
    return TrialOutput{{excess, ratio, identity}, std::move(inst)};
  };
  return s;
}

inline Suite thm21_empirical() {
  Suite s;
  s.checks = {{"sparse_pairing_ratio", CheckKind::finite, 0.0, 0.0},
              {"duality_chain_ratio", CheckKind::upper_bound, 1.0, 1e-9},
              {"maximal_boundedness_constant", CheckKind::finite, 0.0, 0.0},
              {"mdm_over_orlicz_constant", CheckKind::finite, 0.0, 0.0}};
  s.trial_count = requested;
  s.trial = [](const LatticeConfig& cfg, std::uint64_t seed, int index) {
    Rng rng(seed);
    const double p = index % 2 == 0 ? 1.0 : 2.0;
    const double pp = conjugate_exponent(p);
    const auto family = random_sparse_family(cfg, rng, 0.5);
    const double eta = verify_sparse(cfg, family).min_ratio;
    const auto f = random_function(cfg, rng);
    const auto g = random_function(cfg, rng);
    const double lhs = pairing(g, apply_sparse(f, family));
    const double f_norm = choquet_norm(f, p);
    const double g_norm = orlicz_morrey_norm(g, pp, YoungFunction::llogl());
    const double mf_norm = choquet_norm(hl_maximal(f).values, p);
    const double mdmg_norm =
        choquet_norm(fractional_measure_maximal(hl_maximal(g).values).values, pp);
    auto inst = instance_json(cfg);
    inst["p"] = p;
    inst["family"] = to_json(family);
    inst["f"] = to_json(f)["values"];
    inst["g"] = to_json(g)["values"];
    return TrialOutput{{safe_ratio(lhs, f_norm * g_norm),
                        safe_ratio(lhs, mf_norm * mdmg_norm / eta),
                        safe_ratio(mf_norm, f_norm),
                        safe_ratio(mdmg_norm, g_norm)},
                       std::move(inst)};
  };
  return s;
}

inline Suite maximal_equiv() {
  Suite s;
  s.checks = {{"mdm_over_orlicz_max", CheckKind::finite, 0.0, 0.0},
              {"mdm_over_orlicz_min", CheckKind::finite, 0.0, 0.0, Extreme::min},
              {"md_over_orlicz_domination", CheckKind::upper_bound, 1.0, 1e-10}};
  s.trial_count = requested;
  s.trial = [](const LatticeConfig& cfg, std::uint64_t seed, int) {
    Rng rng(seed);
    const auto f = random_function(cfg, rng);
    const auto llogl = YoungFunction::llogl();
    const auto mdm = fractional_measure_maximal(hl_maximal(f).values).values;
    const auto orlicz = orlicz_fractional_maximal(f, cfg.n - cfg.d, llogl).values;
    const auto md = fractional_measure_maximal(f).values;
    double hi = 0.0;
    double lo = kInfinity;
    double dom = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (orlicz[i] <= 0.0) continue;
      hi = std::max(hi, mdm[i] / orlicz[i]);
      lo = std::min(lo, mdm[i] / orlicz[i]);
      dom = std::max(dom, md[i] / orlicz[i]);
    }
    auto inst = instance_json(cfg);
    inst["f"] = to_json(f)["values"];
    return TrialOutput{{hi, lo, dom}, std::move(inst)};
  };
  return s;
}

inline Suite cor32() {
  Suite s;
  s.checks = {{"block_inf_over_associate", CheckKind::finite, 0.0, 0.0},
              {"associate_over_block_inf", CheckKind::upper_bound, 4.0, 1e-8}};
  s.trial_count = requested;
  s.trial = [](const LatticeConfig& cfg, std::uint64_t seed, int index) {
    Rng rng(seed);
    const YoungFunction phi = index % 2 == 0 ? YoungFunction::power(2.0) : YoungFunction::llogl();
    const YoungFunction phibar = phi.complement();
    const auto f = random_function(cfg, rng);
    const auto table = luxemburg_table(f, phi);
    const auto [best, block_inf] = tiling_infimum(
        cfg, [&](const Tiling& t) { return block_norm_from_table(cfg, table, 1.0, t); });
    // Dual witness of the optimal tiling against the extremal measure of
    // its profile: pairs with f to (about) the block norm itself.
    const auto norms = tile_norms(cfg, table, best);
    const auto mu = extremal_measure(tile_profile(cfg, best, norms));
    const vector<GridFunction> extra{dual_witness(f, mu, 1.0, phi, best).F};
    SpaceSpec space{SpaceTag::orlicz_morrey_inf, kInfinity, phibar, {}};
    const double assoc = associate_lower_bound(f, space, 12, derive_seed(seed, 1), extra);
    auto inst = instance_json(cfg);
    inst["phi"] = phi.name();
    inst["f"] = to_json(f)["values"];
    inst["best_tiling"] = to_json(best);
    return TrialOutput{{safe_ratio(block_inf, assoc), safe_ratio(assoc, block_inf)},
                       std::move(inst)};
  };
  return s;
}

inline Suite thm33() {
  Suite s;
  s.checks = {{"block_inf_over_choquet_l1", CheckKind::finite, 0.0, 0.0}};
  s.trial_count = requested;
  s.trial = [](const LatticeConfig& cfg, std::uint64_t seed, int) {
    Rng rng(seed);
    const auto family = random_sparse_family(cfg, rng, 0.5);
    const auto f = random_function(cfg, rng);
    const auto F = apply_sparse(f, family);
    const auto table = luxemburg_table(F, YoungFunction::expm1());
    const auto [best, block_inf] = tiling_infimum(
        cfg, [&](const Tiling& t) { return block_norm_from_table(cfg, table, 1.0, t); });
    auto inst = instance_json(cfg);
    inst["family"] = to_json(family);
    inst["f"] = to_json(f)["values"];
    inst["best_tiling"] = to_json(best);
    return TrialOutput{{safe_ratio(block_inf, choquet_norm(f, 1.0))}, std::move(inst)};
  };
  // Refinement spot-check over every tiling at depth 2: how both tiling
  // norms move when one tile is split into its children. Recorded only.
  s.metrics = [](const SuiteConfig& c) {
    const LatticeConfig cfg{c.lattice.n, std::min(2, c.lattice.L), c.lattice.d};
    Rng rng(derive_seed(c.seed, 0x7e11));
    const auto f = random_function(cfg, rng);
    const auto phi = YoungFunction::llogl();
    const auto phibar = phi.complement();
    int pairs = 0;
    int block_up = 0;
    int block_down = 0;
    int morrey_up = 0;
    int morrey_down = 0;
    for (const auto& t : enumerate_tilings(cfg)) {
      const double block = block_norm(f, 2.0, phi, t);
      const double morrey = tiling_orlicz_morrey_norm(f, 2.0, phibar, t);
      for (std::size_t i = 0; i < t.cubes.size(); ++i) {
        if (t.cubes[i].level == cfg.L) continue;
        Tiling finer;
        for (std::size_t j = 0; j < t.cubes.size(); ++j) {
          if (j != i) finer.cubes.push_back(t.cubes[j]);
        }
        for (const auto& child : children(cfg, t.cubes[i])) finer.cubes.push_back(child);
        const double b = block_norm(f, 2.0, phi, finer);
        const double m = tiling_orlicz_morrey_norm(f, 2.0, phibar, finer);
        ++pairs;
        block_up += b > block * (1 + 1e-12);
        block_down += b < block * (1 - 1e-12);
        morrey_up += m > morrey * (1 + 1e-12);
        morrey_down += m < morrey * (1 - 1e-12);
      }
    }
    return Json{{"refinement",
                 {{"L", cfg.L},
                  {"pairs", pairs},
                  {"block_increases", block_up},
                  {"block_decreases", block_down},
                  {"orlicz_morrey_increases", morrey_up},
                  {"orlicz_morrey_decreases", morrey_down}}}};
  };
  return s;
}

/// Snapped Cantor family with m = n/d; trial K checks stage K.
inline int cantor_m(const LatticeConfig& cfg) {
  const double m = cfg.n / cfg.d;
  const double rounded = std::round(m);
  if (std::abs(m - rounded) > 1e-12 || rounded < 2) {
    throw ConfigError("cantor_suite needs d = n/m for an integer m >= 2");
  }
  return static_cast<int>(rounded);
}

inline Suite cantor_suite() {
  Suite s;
  s.checks = {{"content_minus_one", CheckKind::upper_bound, 0.0, 1e-9},
              {"l1_norm_minus_k_plus_one", CheckKind::upper_bound, 0.0, 1e-9},
              {"luxemburg_over_lambda_star", CheckKind::upper_bound, 1.0, 1e-9},
              {"sparseness_deviation", CheckKind::upper_bound, 0.0, 1e-12},
              {"measure_deviation", CheckKind::upper_bound, 0.0, 1e-15}};
  s.trial_count = [](const SuiteConfig& c) {
    return std::min(4, c.lattice.L / cantor_m(c.lattice)) + 1;
  };
  s.trial = [](const LatticeConfig& cfg, std::uint64_t, int K) {
    const CantorConfig cc{cfg.n, cantor_m(cfg), K};
    const auto family = cantor_family(cc, cfg.L);
    const double content = hausdorff_content(family.stages.back()).value;
    const auto F = apply_sparse(GridFunction::constant(cfg, 1.0), family.family);
    const double l1 = choquet_norm(F, 1.0);
    const auto lux = cantor_lux_constants(cc.n, cc.delta());
    const double norm = luxemburg_norm(F.values(), YoungFunction::expm1());
    const auto report = verify_sparse(cfg, family.family);
    const double expected_ratio = K == 0 ? 1.0 : cc.eta();
    double measure = 0.0;
    for (double v : family.stages.back().values()) measure += v;
    measure *= cfg.volume(cfg.L);
    auto inst = instance_json(cfg);
    inst["m"] = cc.m;
    inst["K"] = K;
    return TrialOutput{{std::abs(content - 1.0), std::abs(l1 - (K + 1)),
                        K == 0 ? kNotApplicable : norm / lux.lambda_star,
                        std::abs(report.min_ratio - expected_ratio),
                        std::abs(measure - std::pow(1.0 - cc.delta(), cc.n * K))},
                       std::move(inst)};
  };
  s.metrics = [](const SuiteConfig& c) {
    const int m = cantor_m(c.lattice);
    const int kmax = std::min(4, c.lattice.L / m);
    const auto lux = cantor_lux_constants(c.lattice.n, CantorConfig{c.lattice.n, m, 0}.delta());
    Json norms = Json::array();
    for (int K = 0; K <= kmax; ++K) {
      const auto F = cantor_function({c.lattice.n, m, K}, c.lattice.L);
      norms.push_back(luxemburg_norm(F.values(), YoungFunction::expm1()));
    }
    return Json{{"m", m},
                {"lambda0", lux.lambda0},
                {"Lambda0", lux.Lambda0},
                {"lambda_star", lux.lambda_star},
                {"luxemburg_norms", norms}};
  };
  return s;
}

}  // namespace suites

inline const std::map<std::string, std::function<Suite()>>& suite_registry() {
  static const std::map<std::string, std::function<Suite()>> registry = {
      {"adams", suites::adams},
      {"simple_trick", suites::simple_trick},
      {"triangle", suites::triangle},
      {"hoelder", suites::hoelder},
      {"frostman", suites::frostman_duality},
      {"young_suite", suites::young_suite},
      {"verification_ineq", suites::verification_ineq},
      {"thm31_first", suites::thm31_first},
      {"thm31_witness", suites::thm31_witness},
      {"thm21_empirical", suites::thm21_empirical},
      {"maximal_equiv", suites::maximal_equiv},
      {"cantor_suite", suites::cantor_suite},
      {"cor32", suites::cor32},
      {"thm33", suites::thm33},
  };
  return registry;
}

inline std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : suite_registry()) out.push_back(name);
  return out;
}

/// Runs a registered suite. Deterministic in (name, trials, lattice, seed).
inline VerificationReport run_suite(const SuiteConfig& config) {
  const auto& registry = suite_registry();
  const auto it = registry.find(config.name);
  if (it == registry.end()) throw UnknownSuiteError("unknown suite '" + config.name + "'");
  config.lattice.validate();
  const Suite suite = it->second();
  const int count = suite.trial_count(config);

  std::vector<TrialOutput> results(static_cast<std::size_t>(std::max(0, count)));
  parallel_for(count, worker_count(config.threads), [&](int i) {
    results[i] = suite.trial(config.lattice, derive_seed(config.seed, i), i);
  });

  VerificationReport report;
  report.config = config;
  report.trials_run = count;
  for (const auto& spec : suite.checks) {
    CheckSummary summary;
    summary.spec = spec;
    report.checks.push_back(std::move(summary));
  }
  for (int i = 0; i < count; ++i) {
    const auto& r = results[i];
    for (std::size_t c = 0; c < report.checks.size(); ++c) {
      const double v = r.values[c];
      if (std::isnan(v)) continue;  // not applicable to this instance
      auto& sum = report.checks[c];
      ++sum.samples;
      sum.worst = std::max(sum.worst, v);
      sum.min = std::min(sum.min, v);
      bool ok = true;
      switch (sum.spec.kind) {
        case CheckKind::upper_bound: ok = v <= sum.spec.bound + sum.spec.tolerance; break;
        case CheckKind::finite: ok = std::isfinite(v); break;
        case CheckKind::recorded: break;
      }
      if (!ok && sum.pass) {
        sum.pass = false;
        sum.counterexample = Json{{"check", sum.spec.name},
                                  {"trial", i},
                                  {"trial_seed", derive_seed(config.seed, i)},
                                  {"value", number_json(v)},
                                  {"instance", r.instance}};
      }
    }
  }
  if (suite.metrics) report.metrics = suite.metrics(config);
  return report;
}

enum class InstanceKind { function, density, set, tiling, sparse_family };

inline InstanceKind parse_instance_kind(std::string_view name) {
  if (name == "function") return InstanceKind::function;
  if (name == "density") return InstanceKind::density;
  if (name == "set") return InstanceKind::set;
  if (name == "tiling") return InstanceKind::tiling;
  if (name == "sparse_family") return InstanceKind::sparse_family;
  throw ParseError("unknown instance kind '" + std::string(name) + "'");
}

using Instance = std::variant<GridFunction, Tiling, SparseFamily>;

/// Seed-deterministic random instance of the given kind.
inline Instance random_instance(InstanceKind kind, const LatticeConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Rng rng(seed);
  switch (kind) {
    case InstanceKind::function: return random_function(cfg, rng);
    case InstanceKind::density: return suites::random_density(cfg, rng);
    case InstanceKind::set: return random_set(cfg, rng);
    case InstanceKind::tiling: return random_tiling(cfg, rng);
    case InstanceKind::sparse_family: return random_sparse_family(cfg, rng, 0.5);
  }
  throw ConfigError("unknown instance kind");
}

inline Json to_json(const Instance& inst) {
  return std::visit([](const auto& v) { return Json(to_json(v)); }, inst);
}

}  // namespace choquet
