// Copyright 2026 The ecq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Experiments on sequences of scalar quantizers as D -> 0: excess-rate curves,
// the concentration of windowed cell lengths that asymptotically optimal
// sequences must exhibit, and the cell-level quantities used in the
// high-resolution converse (windowed measures, tail sets, the piecewise
// constant density approximation). Everything is computed exactly from CDF
// differences and quadrature.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "ecq/bounds.hpp"
#include "ecq/errors.hpp"
#include "ecq/numerics.hpp"
#include "ecq/quantizer.hpp"
#include "ecq/sources.hpp"

namespace ecq {

// One-parameter scalar quantizer family: pattern {1} is the uniform midpoint
// quantizer, any other pattern an almost-regular periodic one.
struct QuantizerFamily {
  std::vector<double> pattern{1.0};
  double offset = 0.0;

  bool is_uniform() const { return pattern.size() == 1; }
  std::string name() const {
    if (is_uniform()) return "uniform";
    std::string s = "pattern:";
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      if (i) s += ",";
      char buf[32];
      auto res = std::to_chars(buf, buf + sizeof buf, pattern[i]);
      s.append(buf, res.ptr);
    }
    return s;
  }
};

inline Calibration calibrate_family(const QuantizerFamily& family, const ScalarSource& s, double r,
                                    double target) {
  if (family.is_uniform() && family.pattern[0] == 1.0) return calibrate_uniform(s, r, target, family.offset);
  return calibrate_pattern(family.pattern, s, r, target, family.offset);
}

// R(D) for the Gaussian under quadratic distortion, otherwise the Shannon
// lower bound, which is asymptotically tight for every source considered here.
inline double reference_rate(const ScalarSource& s, double r, double distortion) {
  if (s.family == ScalarFamily::kGaussian && r == 2.0)
    return std::max(0.0, 0.5 * std::log(s.p2 * s.p2 / distortion));
  return bounds::shannon_lower_bound(s.analytic_entropy(), 1.0, r, distortion);
}

struct ExcessRatePoint {
  double D = 0.0;
  double achieved_D = 0.0;
  double step = 0.0;
  double entropy = 0.0;         // nats
  double reference_rate = 0.0;  // nats
  double excess = 0.0;          // nats
  double excess_bits() const { return bounds::to_bits(excess); }
};

struct ExcessRateCurve {
  std::vector<ExcessRatePoint> points;
  bool partial = false;
  std::string error;
};

inline ExcessRatePoint excess_rate_point(const ScalarSource& s, double r, double target,
                                         const QuantizerFamily& family) {
  const auto cal = calibrate_family(family, s, r, target);
  ExcessRatePoint pt;
  pt.D = target;
  pt.achieved_D = cal.achieved_distortion;
  pt.step = cal.step;
  pt.entropy = exact_entropy(cal.quantizer, s).value;
  pt.reference_rate = reference_rate(s, r, target);
  pt.excess = pt.entropy - pt.reference_rate;
  return pt;
}

inline ExcessRateCurve excess_rate_curve(const SourceModel& source, double r,
                                         std::span<const double> distortions,
                                         const QuantizerFamily& family = {}) {
  require(source.is_scalar(), "excess_rate_curve: scalar sources only");
  require(r > 0.0, "excess_rate_curve: r must be positive");
  require(!distortions.empty(), "excess_rate_curve: empty D list");
  for (std::size_t i = 0; i < distortions.size(); ++i) {
    require(distortions[i] > 0.0, "excess_rate_curve: D values must be positive");
    if (i > 0) require(distortions[i] < distortions[i - 1], "excess_rate_curve: D values must decrease");
  }
  ExcessRateCurve curve;
  for (double target : distortions) {
    try {
      curve.points.push_back(excess_rate_point(source.scalar(), r, target, family));
    } catch (const NonconvergenceError& e) {
      curve.partial = true;
      curve.error = e.what();
      break;
    }
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Cell windows.

struct CellWindowMeasure {
  std::size_t cell = 0;
  double lambda = 0.0;  // |S_i ∩ [x̂_i - ε, x̂_i + ε]|
  double eps = 0.0;
};

inline CellWindowMeasure cell_window(const ScalarQuantizer& q, std::size_t i, double eps) {
  const double c = q.reconstruction(i);
  const double lo = std::max(q.left(i), c - eps);
  const double hi = std::min(q.right(i), c + eps);
  return {i, std::max(0.0, hi - lo), eps};
}

// Checks min(Δ, ε)^r <= Λ^r <= min(Δ, 2ε)^r on every cell with its
// reconstruction inside the cell (up to a few ulps). Returns the number of
// violating cells.
inline std::size_t window_sandwich_violations(const ScalarQuantizer& q, double eps, double r) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < q.cell_count(); ++i) {
    const double c = q.reconstruction(i);
    if (c < q.left(i) || c > q.right(i)) continue;
    const double delta = q.length(i);
    const double lam = cell_window(q, i, eps).lambda;
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * (std::abs(c) + eps + 1.0);
    const double upper = std::min(delta, 2.0 * eps);
    const double lower = std::min(delta, eps);
    if (lam > delta) ++bad;
    else if (std::pow(lam, r) > std::pow(upper + slack, r)) ++bad;
    else if (std::pow(lam + slack, r) < std::pow(lower, r)) ++bad;
  }
  return bad;
}

enum class ConcentrationVariant { kWindowLambda, kCellDelta };

inline std::string_view variant_name(ConcentrationVariant v) {
  return v == ConcentrationVariant::kWindowLambda ? "theorem2_lambda" : "corollary_delta";
}

struct ConcentrationResult {
  double D = 0.0;
  double rho = 0.0;
  double theta = 0.0;
  ConcentrationVariant variant = ConcentrationVariant::kWindowLambda;
  double mass = 0.0;
  double tail_mass = 0.0;  // mass of the two unbounded cells
};

// Σ_i P(X ∈ S_i) 1{ |L_i^r / D - 2^r (1+r)| <= ϑ } with L_i = Λ_i at window
// radius ρ D^{1/r} (theorem2_lambda) or L_i = Δ_i (corollary_delta, bounded
// cells only). `D` must be the quantizer's exact distortion.
inline ConcentrationResult concentration_statistic(const ScalarQuantizer& q, const ScalarSource& s,
                                                   double r, double D, double rho, double theta,
                                                   ConcentrationVariant variant,
                                                   bool check_distortion = true) {
  require(r > 0.0 && D > 0.0, "concentration_statistic: need r > 0 and D > 0");
  require(rho > 0.0 && theta > 0.0, "concentration_statistic: need rho > 0 and theta > 0");
  if (check_distortion) {
    const double exact = exact_distortion(q, s, r).value;
    require(std::abs(exact - D) <= 1e-6 * D,
            "concentration_statistic: D must equal the quantizer's exact distortion");
  }
  const auto cells = cell_probabilities(q, s);
  const double eps = rho * std::pow(D, 1.0 / r);
  const double target = std::pow(2.0, r) * (1.0 + r);
  ConcentrationResult res{D, rho, theta, variant, 0.0, 0.0};
  CompensatedSum mass;
  for (std::size_t k = 0; k < cells.p.size(); ++k) {
    const std::size_t i = cells.first_cell + k;
    const double p = cells.p[k];
    if (q.is_tail(i)) res.tail_mass += p;
    double len = 0.0;
    if (variant == ConcentrationVariant::kWindowLambda) {
      len = cell_window(q, i, eps).lambda;
    } else {
      if (q.is_tail(i)) continue;
      len = q.length(i);
    }
    if (std::abs(std::pow(len, r) / D - target) <= theta) mass.add(p);
  }
  res.mass = mass.value();
  return res;
}

// ---------------------------------------------------------------------------
// Tail sets outside the ε-window: B̄_i = { x ∈ S_i : |x - x̂_i| > ε }.

struct OutsideWindowResult {
  double eps = 0.0;
  double lhs_a = 0.0;    // Σ P(X ∈ B̄_i)
  double bound_a = 0.0;  // D / ε^r = κ
  double lhs_b = 0.0;    // Σ E[|X - x̂_i|^r 1{X ∈ B̄_i}]
  double bound_b = 0.0;  // D
  bool pass = false;
};

inline OutsideWindowResult outside_window_check(const ScalarQuantizer& q, const ScalarSource& s, double r, double D,
                                 double kappa) {
  require(r > 0.0 && D > 0.0 && kappa > 0.0, "outside_window_check: need r, D, kappa > 0");
  OutsideWindowResult res;
  res.eps = std::pow(D / kappa, 1.0 / r);
  res.bound_a = kappa;
  res.bound_b = D;
  CompensatedSum mass, moment;
  auto piece = [&](double a, double b, double c) {
    if (!(b > a)) return;
    const double p = s.interval_mass(a, b);
    if (p < 1e-200) return;
    mass.add(p);
    moment.add(detail::cell_moment(s, a, b, c, r).value);
  };
  for (std::size_t i = 0; i < q.cell_count(); ++i) {
    const double a = q.left(i), b = q.right(i), c = q.reconstruction(i);
    piece(a, std::min(b, c - res.eps), c);
    piece(std::max(a, c + res.eps), b, c);
  }
  res.lhs_a = mass.value();
  res.lhs_b = moment.value();
  // quadrature noise allowance on the moment side only
  res.pass = res.lhs_a <= res.bound_a && res.lhs_b <= res.bound_b * (1.0 + 1e-9);
  return res;
}

// ---------------------------------------------------------------------------
// Piecewise-constant density f^(Δ) = Σ (p_i / Δ_i) 1{x ∈ S_i}.

struct TvResult {
  double tv = 0.0;         // ∫ |f^(Δ) - f|, including the tail cells
  double tail_mass = 0.0;  // contribution of the unbounded cells (f^(Δ) = 0 there)
};

inline TvResult tv_piecewise(const ScalarQuantizer& q, const ScalarSource& s) {
  TvResult res;
  CompensatedSum tv;
  for (std::size_t i = 0; i < q.cell_count(); ++i) {
    const double a = q.left(i), b = q.right(i);
    const double p = s.interval_mass(a, b);
    if (q.is_tail(i)) {
      res.tail_mass += p;
      tv.add(p);
      continue;
    }
    if (p < 1e-200) continue;
    const double height = p / (b - a);
    // f is monotone between the mode and the density breakpoints; on each
    // such piece |height - f| has at most one kink, found by root bracketing.
    std::vector<double> pieces = s.breakpoints();
    if (s.family != ScalarFamily::kUniform) pieces.push_back(s.median());
    pieces.push_back(a);
    pieces.push_back(b);
    std::sort(pieces.begin(), pieces.end());
    std::vector<double> breaks;
    for (std::size_t k = 0; k + 1 < pieces.size(); ++k) {
      const double lo = std::max(a, pieces[k]), hi = std::min(b, pieces[k + 1]);
      if (!(hi > lo)) continue;
      breaks.push_back(lo);
      auto g = [&](double x) { return s.pdf(x) - height; };
      const double glo = g(lo), ghi = g(hi);
      if ((glo < 0.0 && ghi > 0.0) || (glo > 0.0 && ghi < 0.0)) {
        std::uintmax_t iters = 100;
        const auto root = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi,
                                                            boost::math::tools::eps_tolerance<double>(52), iters);
        breaks.push_back(0.5 * (root.first + root.second));
      }
    }
    tv.add(integrate([&](double x) { return std::abs(height - s.pdf(x)); }, a, b, std::move(breaks), 1e-10).value);
  }
  res.tv = tv.value();
  return res;
}

// ---------------------------------------------------------------------------
// Weighted cell moments (1/D) Σ p_i L_i^r, whose high-resolution limit for an
// optimal sequence is 2^r (1+r).

struct WeightedMoment {
  double value = 0.0;
  double excluded_mass = 0.0;  // tail cells skipped by the Δ version
};

inline WeightedMoment weighted_cell_moment(const ScalarQuantizer& q, const ScalarSource& s, double r,
                                           double D) {
  require(r > 0.0 && D > 0.0, "weighted_cell_moment: need r > 0 and D > 0");
  const auto cells = cell_probabilities(q, s);
  WeightedMoment out;
  CompensatedSum sum;
  for (std::size_t k = 0; k < cells.p.size(); ++k) {
    const std::size_t i = cells.first_cell + k;
    if (q.is_tail(i)) {
      out.excluded_mass += cells.p[k];
      continue;
    }
    sum.add(cells.p[k] * std::pow(q.length(i), r));
  }
  out.value = sum.value() / D;
  return out;
}

// Windowed version with Λ_i at ε = ρ D^{1/r}; includes every cell.
inline double weighted_window_moment(const ScalarQuantizer& q, const ScalarSource& s, double r, double D,
                                     double rho) {
  require(r > 0.0 && D > 0.0 && rho > 0.0, "weighted_window_moment: need r, D, rho > 0");
  const auto cells = cell_probabilities(q, s);
  const double eps = rho * std::pow(D, 1.0 / r);
  CompensatedSum sum;
  for (std::size_t k = 0; k < cells.p.size(); ++k)
    sum.add(cells.p[k] * std::pow(cell_window(q, cells.first_cell + k, eps).lambda, r));
  return sum.value() / D;
}

}  // namespace ecq
