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
/// Young functions, complementary functions and Luxemburg norms.
///
/// A Young function is an extended-real convex, nondecreasing,
/// left-continuous map [0,inf) -> [0,inf] with Phi(0) = 0 and
/// Phi(t) -> inf. Values beyond the finiteness threshold are +inf and
/// propagate through averages.
///
/// Registered closed forms:
///
///   identity       t                      <-> indicator of [0,1]
///   power:p        t^p                    <-> (p-1) p^{-p'} s^{p'}
///   llogl          t log(e+t)             ->  expm1 (canonical partner)
///   expm1          e^t - 1                <-> 0 on [0,1], s log s - s + 1
///
/// Anything else is conjugated numerically.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "choquet/content.hpp"
#include "choquet/error.hpp"
#include "choquet/lattice.hpp"

namespace choquet {

class YoungFunction;

namespace detail {

struct YoungImpl {
  virtual ~YoungImpl() = default;
  [[nodiscard]] virtual double eval(double t) const = 0;
  /// Right derivative.
  [[nodiscard]] virtual double deriv(double t) const = 0;
  /// sup{t : Phi(t) < inf}.
  [[nodiscard]] virtual double finite_limit() const { return kInfinity; }
  [[nodiscard]] virtual bool differentiable_at(double t) const {
    return t >= 0.0 && t < finite_limit();
  }
  [[nodiscard]] virtual YoungFunction complement() const = 0;

  std::string name;
  bool claims_delta2 = false;
  bool claims_nabla2 = false;
};

}  // namespace detail

/// Immutable handle to a Young function.
class YoungFunction {
 public:
  explicit YoungFunction(std::shared_ptr<const detail::YoungImpl> impl)
      : impl_(std::move(impl)) {}

  double operator()(double t) const { return impl_->eval(t); }
  [[nodiscard]] double eval(double t) const { return impl_->eval(t); }
  [[nodiscard]] double deriv(double t) const { return impl_->deriv(t); }
  [[nodiscard]] double finite_limit() const { return impl_->finite_limit(); }
  [[nodiscard]] bool differentiable_at(double t) const {
    return impl_->differentiable_at(t);
  }
  [[nodiscard]] const std::string& name() const { return impl_->name; }
  [[nodiscard]] bool claims_delta2() const { return impl_->claims_delta2; }
  [[nodiscard]] bool claims_nabla2() const { return impl_->claims_nabla2; }

  /// The complementary function sup_s {ts - Phi(s)}: closed form for
  /// registered functions, numeric Legendre transform otherwise.
  [[nodiscard]] YoungFunction complement() const { return impl_->complement(); }

  static YoungFunction identity();
  static YoungFunction linear(double slope, std::string name);
  static YoungFunction indicator(double threshold, std::string name);
  static YoungFunction power(double p);
  static YoungFunction scaled_power(double coeff, double exponent,
                                    std::string name);
  static YoungFunction llogl();
  static YoungFunction expm1();
  static YoungFunction expm1_conjugate();
  static YoungFunction numeric_conjugate(const YoungFunction& base);

  /// Parses "identity", "power:p", "llogl", "expm1", "conjugate:<name>" and
  /// "numeric-conjugate:<name>".
  static YoungFunction parse(std::string_view spec);

 private:
  std::shared_ptr<const detail::YoungImpl> impl_;
};

namespace detail {

inline std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

/// "conjugate:x" <-> "x".
inline std::string conjugate_name(const std::string& name) {
  constexpr std::string_view prefix = "conjugate:";
  if (name.starts_with(prefix)) return name.substr(prefix.size());
  return std::string(prefix) + name;
}

struct Linear final : YoungImpl {
  double slope = 1.0;
  double eval(double t) const override { return slope * t; }
  double deriv(double) const override { return slope; }
  YoungFunction complement() const override {
    return YoungFunction::indicator(slope, conjugate_name(name));
  }
};

/// 0 on [0, threshold], +inf beyond.
struct Indicator final : YoungImpl {
  double threshold = 1.0;
  double eval(double t) const override { return t <= threshold ? 0.0 : kInfinity; }
  double deriv(double t) const override { return t < threshold ? 0.0 : kInfinity; }
  double finite_limit() const override { return threshold; }
  YoungFunction complement() const override {
    return YoungFunction::linear(threshold, conjugate_name(name));
  }
};

/// coeff * t^exponent, exponent > 1.
struct ScaledPower final : YoungImpl {
  double coeff = 1.0;
  double exponent = 2.0;
  double eval(double t) const override { return coeff * std::pow(t, exponent); }
  double deriv(double t) const override {
    return coeff * exponent * std::pow(t, exponent - 1.0);
  }
  YoungFunction complement() const override {
    // sup_s {ts - c s^q} = (1 - 1/q) (cq)^{-1/(q-1)} t^{q'}.
    const double q = exponent;
    const double dual = q / (q - 1.0);
    const double c = (1.0 - 1.0 / q) * std::pow(coeff * q, -1.0 / (q - 1.0));
    return YoungFunction::scaled_power(c, dual, conjugate_name(name));
  }
};

/// t log(e + t).
struct LLogL final : YoungImpl {
  double eval(double t) const override {
    return t * std::log(std::numbers::e + t);
  }
  double deriv(double t) const override {
    return std::log(std::numbers::e + t) + t / (std::numbers::e + t);
  }
  YoungFunction complement() const override { return YoungFunction::expm1(); }
};

/// e^t - 1.
struct ExpM1 final : YoungImpl {
  double eval(double t) const override { return std::expm1(t); }
  double deriv(double t) const override { return std::exp(t); }
  YoungFunction complement() const override {
    return YoungFunction::expm1_conjugate();
  }
};

/// 0 on [0,1], s log s - s + 1 beyond.
struct ExpM1Conjugate final : YoungImpl {
  double eval(double t) const override {
    if (t <= 1.0) return 0.0;
    if (std::isinf(t)) return kInfinity;
    return t * std::log(t) - t + 1.0;
  }
  double deriv(double t) const override { return t < 1.0 ? 0.0 : std::log(t); }
  YoungFunction complement() const override { return YoungFunction::expm1(); }
};

struct Maximizer {
  double value = 0.0;
  double argument = 0.0;
};

/// sup_{s >= 0} {ts - Phi(s)} over s in {0} u [2^-40, 2^40]: a geometric grid
/// with four points per octave locates the maximizer of the concave
/// objective, then golden-section search refines it. A maximizer pinned at
/// the top of the grid is reported as +inf.
inline Maximizer conjugate_sup(const YoungFunction& base, double t) {
  if (std::isnan(t)) throw DomainError("conjugate evaluated at NaN");
  if (t <= 0.0) return {0.0, 0.0};
  if (std::isinf(t)) return {kInfinity, kInfinity};
  constexpr int kLowExp = -40;
  constexpr int kHighExp = 40;
  constexpr int kPerOctave = 4;
  constexpr int kCount = (kHighExp - kLowExp) * kPerOctave + 1;
  auto objective = [&](double s) {
    const double phi = base(s);
    return std::isinf(phi) ? -kInfinity : t * s - phi;
  };
  auto grid = [&](int i) {
    return std::exp2(kLowExp + static_cast<double>(i) / kPerOctave);
  };
  int best = -1;  // -1 denotes s = 0
  double best_value = 0.0;
  double last_value = 0.0;
  double prev_value = 0.0;
  for (int i = 0; i < kCount; ++i) {
    const double v = objective(grid(i));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
    prev_value = last_value;
    last_value = v;
  }
  if (best == kCount - 1 && last_value > prev_value) return {kInfinity, kInfinity};

  double a = best <= 0 ? 0.0 : grid(best - 1);
  double b = best < 0 ? grid(0) : grid(std::min(best + 1, kCount - 1));
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = objective(x1);
  double f2 = objective(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-17 * b; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = objective(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = objective(x1);
    }
  }
  Maximizer out{best_value, best < 0 ? 0.0 : grid(best)};
  if (f1 > out.value) out = {f1, x1};
  if (f2 > out.value) out = {f2, x2};
  return out;
}

struct NumericConjugate final : YoungImpl {
  explicit NumericConjugate(YoungFunction b) : base(std::move(b)) {}
  double eval(double t) const override { return conjugate_sup(base, t).value; }
  // Envelope theorem: the derivative of the conjugate is the maximizer.
  double deriv(double t) const override { return conjugate_sup(base, t).argument; }
  YoungFunction complement() const override { return base; }
  YoungFunction base;
};

template <typename Impl>
YoungFunction make_young(Impl impl, std::string name, bool delta2, bool nabla2) {
  impl.name = std::move(name);
  impl.claims_delta2 = delta2;
  impl.claims_nabla2 = nabla2;
  return YoungFunction(std::make_shared<const Impl>(std::move(impl)));
}

}  // namespace detail

inline YoungFunction YoungFunction::identity() { return linear(1.0, "identity"); }

inline YoungFunction YoungFunction::linear(double slope, std::string name) {
  detail::Linear impl;
  impl.slope = slope;
  return detail::make_young(std::move(impl), std::move(name), true, false);
}

inline YoungFunction YoungFunction::indicator(double threshold, std::string name) {
  detail::Indicator impl;
  impl.threshold = threshold;
  return detail::make_young(std::move(impl), std::move(name), false, false);
}

inline YoungFunction YoungFunction::power(double p) {
  if (!(p > 1.0) || std::isinf(p)) throw DomainError("power:p needs 1 < p < inf");
  return scaled_power(1.0, p, "power:" + detail::format_number(p));
}

inline YoungFunction YoungFunction::scaled_power(double coeff, double exponent,
                                                 std::string name) {
  detail::ScaledPower impl;
  impl.coeff = coeff;
  impl.exponent = exponent;
  return detail::make_young(std::move(impl), std::move(name), true, true);
}

inline YoungFunction YoungFunction::llogl() {
  return detail::make_young(detail::LLogL{}, "llogl", true, false);
}

inline YoungFunction YoungFunction::expm1() {
  return detail::make_young(detail::ExpM1{}, "expm1", false, false);
}

inline YoungFunction YoungFunction::expm1_conjugate() {
  return detail::make_young(detail::ExpM1Conjugate{}, "conjugate:expm1", false,
                            false);
}

inline YoungFunction YoungFunction::numeric_conjugate(const YoungFunction& base) {
  detail::NumericConjugate impl(base);
  impl.name = "numeric-conjugate:" + base.name();
  return YoungFunction(std::make_shared<const detail::NumericConjugate>(std::move(impl)));
}

inline YoungFunction YoungFunction::parse(std::string_view spec) {
  if (spec == "identity") return identity();
  if (spec == "llogl") return llogl();
  if (spec == "expm1") return expm1();
  if (spec.starts_with("power:")) {
    const auto arg = spec.substr(6);
    double p = 0.0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), p);
    if (ec != std::errc{} || ptr != arg.data() + arg.size()) {
      throw ParseError("bad exponent in Young function '" + std::string(spec) + "'");
    }
    return power(p);
  }
  if (spec.starts_with("conjugate:")) return parse(spec.substr(10)).complement();
  if (spec.starts_with("numeric-conjugate:")) {
    return numeric_conjugate(parse(spec.substr(18)));
  }
  throw ParseError("unknown Young function '" + std::string(spec) + "'");
}

/// Mean of Phi(|v|/lambda) over the values; +inf as soon as one term is.
inline double phi_mean(std::span<const double> values, const YoungFunction& phi,
                       double lambda) {
  double s = 0.0;
  for (double v : values) {
    if (v == 0.0) continue;
    const double term = phi(std::abs(v) / lambda);
    if (std::isinf(term)) return kInfinity;
    s += term;
  }
  return s / static_cast<double>(values.size());
}

inline constexpr double kLuxemburgRelativeWidth = 1e-10;
inline constexpr int kLuxemburgMaxSteps = 200;

/// inf{lambda > 0 : mean Phi(|v|/lambda) <= 1} by monotone bisection. The
/// returned value is the upper end of the final bracket, so the constraint
/// holds at it.
inline double luxemburg_norm(std::span<const double> values, const YoungFunction& phi) {
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  if (std::isinf(peak)) return kInfinity;

  double lo = 0.0;
  double hi = 0.0;
  int bracket = 0;
  constexpr int kMaxBracket = 2000;
  if (phi_mean(values, phi, peak) <= 1.0) {
    hi = peak;
    lo = peak / 2.0;
    while (phi_mean(values, phi, lo) <= 1.0) {
      if (++bracket > kMaxBracket || lo == 0.0) {
        throw ConvergenceError("Luxemburg bracket did not close for " + phi.name());
      }
      hi = lo;
      lo /= 2.0;
    }
  } else {
    lo = peak;
    hi = 2.0 * peak;
    while (phi_mean(values, phi, hi) > 1.0) {
      if (++bracket > kMaxBracket || std::isinf(hi)) {
        throw ConvergenceError("Luxemburg bracket did not close for " + phi.name());
      }
      lo = hi;
      hi *= 2.0;
    }
  }
  int steps = 0;
  while (hi - lo > kLuxemburgRelativeWidth * hi) {
    if (++steps > kLuxemburgMaxSteps) {
      throw ConvergenceError("Luxemburg bisection did not converge for " + phi.name());
    }
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (phi_mean(values, phi, mid) <= 1.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

inline std::vector<double> values_in(const GridFunction& f, const CubeId& q) {
  std::vector<double> out;
  for_each_leaf(f.config(), q, [&](std::size_t leaf) { out.push_back(f[leaf]); });
  return out;
}

/// ||f||_{Phi;Q}.
inline double luxemburg_norm(const GridFunction& f, const CubeId& q,
                             const YoungFunction& phi) {
  const auto v = values_in(f, q);
  return luxemburg_norm(v, phi);
}

/// s (1 + mean Phi(|v|/s)).
inline double amemiya_value(std::span<const double> values, const YoungFunction& phi,
                            double s) {
  return s * (1.0 + phi_mean(values, phi, s));
}

/// inf_s s (1 + mean Phi(|v|/s)) by a dense geometric scan of
/// s in [2^-20, 2] * ||v||_Phi (16 points per octave) and golden-section
/// refinement of the convex objective around the best grid point.
inline double amemiya_infimum(std::span<const double> values, const YoungFunction& phi) {
  const double norm = luxemburg_norm(values, phi);
  if (norm == 0.0) return 0.0;
  constexpr int kPerOctave = 16;
  constexpr int kLowOctave = -20;
  constexpr int kCount = (1 - kLowOctave) * kPerOctave + 1;
  auto grid = [&](int i) {
    return norm * std::exp2(kLowOctave + static_cast<double>(i) / kPerOctave);
  };
  int best = kCount - 1;
  double best_value = amemiya_value(values, phi, grid(best));
  for (int i = 0; i < kCount - 1; ++i) {
    const double v = amemiya_value(values, phi, grid(i));
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  // The Luxemburg norm itself is always a candidate (value <= 2 ||v||).
  best_value = std::min(best_value, amemiya_value(values, phi, norm));
  double a = grid(std::max(best - 1, 0));
  double b = grid(std::min(best + 1, kCount - 1));
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 100 && b - a > 1e-14 * b; ++it) {
    const double x1 = b - ratio * (b - a);
    const double x2 = a + ratio * (b - a);
    const double f1 = amemiya_value(values, phi, x1);
    const double f2 = amemiya_value(values, phi, x2);
    best_value = std::min({best_value, f1, f2});
    if (f1 < f2) {
      b = x2;
    } else {
      a = x1;
    }
  }
  return best_value;
}

/// |t Phi'(t) - Phi(t) - conj(Phi'(t))|, which vanishes for a conjugate pair.
inline double young_equality_residual(const YoungFunction& phi, double t,
                                      const YoungFunction& conjugate) {
  if (!(t >= 0.0) || !phi.differentiable_at(t) || std::isinf(phi(t))) {
    throw DomainError(phi.name() + " is not finite and differentiable at t=" +
                      detail::format_number(t));
  }
  const double slope = phi.deriv(t);
  return std::abs(t * slope - phi(t) - conjugate(slope));
}

inline double young_equality_residual(const YoungFunction& phi, double t) {
  return young_equality_residual(phi, t, phi.complement());
}

/// Outcome of a growth-condition probe.
struct GrowthCondition {
  bool holds = false;
  double constant = 0.0;          // the K found when the condition holds
  std::optional<double> witness;  // a t violating it otherwise
};

namespace detail {

/// 8 points per octave from `from` up to 2^20.
inline std::vector<double> growth_grid(double from) {
  std::vector<double> out;
  const int first = static_cast<int>(std::ceil(std::log2(from) * 8.0 - 1e-9));
  for (int i = first; i <= 20 * 8; ++i) out.push_back(std::exp2(i / 8.0));
  return out;
}

}  // namespace detail

inline constexpr double kGrowthGridStart = 0x1p-20;

/// Delta_2: sup Phi(2t)/Phi(t) over t in [from, 2^20]; fails when the
/// ratio exceeds 2^20 or is undefined (Phi(t) = 0 < Phi(2t)). The default
/// range is the global probe; from = 1 probes the condition for large t,
/// which is all that averages over a cube see.
inline GrowthCondition check_delta2(const YoungFunction& phi,
                                    double from = kGrowthGridStart) {
  constexpr double kCap = 1048576.0;
  GrowthCondition out{true, 0.0, std::nullopt};
  for (double t : detail::growth_grid(from)) {
    const double a = phi(t);
    const double b = phi(2.0 * t);
    if (a == 0.0 && b == 0.0) continue;
    const double ratio = a == 0.0 ? kInfinity : b / a;
    if (!(ratio <= kCap)) return {false, 0.0, t};
    out.constant = std::max(out.constant, ratio);
  }
  return out;
}

/// Nabla_2: the smallest K in {2, 4, ..., 2^20} with
/// Phi(t) <= Phi(Kt)/(2K) for t on the grid [from, 2^20].
inline GrowthCondition check_nabla2(const YoungFunction& phi,
                                    double from = kGrowthGridStart) {
  const auto grid = detail::growth_grid(from);
  double witness = grid.front();
  for (int e = 1; e <= 20; ++e) {
    const double K = std::exp2(e);
    bool ok = true;
    for (double t : grid) {
      const double lhs = phi(t);
      const double rhs = phi(K * t) / (2.0 * K);
      if (!(lhs <= rhs * (1.0 + 1e-12))) {
        ok = false;
        witness = t;
        break;
      }
    }
    if (ok) return {true, K, std::nullopt};
  }
  return {false, 0.0, witness};
}

/// min and max of a(t)/b(t) over a geometric grid of [lo, hi], skipping
/// points where either side vanishes.
struct RatioRange {
  double min = kInfinity;
  double max = 0.0;
};

inline RatioRange ratio_range(const YoungFunction& a, const YoungFunction& b,
                              double lo, double hi, int points = 64) {
  RatioRange out;
  for (int i = 0; i < points; ++i) {
    const double t = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
    const double x = a(t);
    const double y = b(t);
    if (x <= 0.0 || y <= 0.0) continue;
    out.min = std::min(out.min, x / y);
    out.max = std::max(out.max, x / y);
  }
  return out;
}

}  // namespace choquet
