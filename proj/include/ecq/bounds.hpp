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

// Closed-form bounds on the high-resolution excess rate of entropy-constrained
// quantizers. All values are in nats unless a name says otherwise; divide by
// log 2 for bits.

#include <cmath>
#include <numbers>

#include "ecq/errors.hpp"

namespace ecq::bounds {

inline constexpr double kLn2 = std::numbers::ln2;

inline double to_bits(double nats) { return nats / kLn2; }

namespace detail {

inline void check_dr(double d, double r) {
  require(d >= 1.0 && std::isfinite(d), "dimension must be >= 1");
  require(r > 0.0 && std::isfinite(r), "distortion exponent r must be positive");
}

}  // namespace detail

// log V_d, V_d = π^{d/2} / Γ(1 + d/2) the Euclidean unit-ball volume.
inline double log_unit_ball_volume(double d) {
  require(d >= 1.0, "unit_ball_volume: d must be >= 1");
  return 0.5 * d * std::log(std::numbers::pi) - std::lgamma(1.0 + 0.5 * d);
}

inline double unit_ball_volume(double d) { return std::exp(log_unit_ball_volume(d)); }

// log of the constant (r/d)(V_d Γ(1+d/r))^{r/d} e shared by the Shannon lower
// bound and the tessellating upper bound.
inline double log_slb_constant(double d, double r) {
  detail::check_dr(d, r);
  return std::log(r / d) + (r / d) * (log_unit_ball_volume(d) + std::lgamma(1.0 + d / r)) + 1.0;
}

// Lower bound on the asymptotic excess rate of any d-dimensional quantizer
// under r-th power distortion:
//   (d/r) log( Γ(1+d/r)^{r/d} e / (1+d/r) ).
inline double excess_rate_lb(double d, double r) {
  detail::check_dr(d, r);
  const double k = d / r;
  return std::lgamma(1.0 + k) + k - k * std::log1p(k);
}

// Shannon lower bound on R(D) for a source with differential entropy h.
inline double shannon_lower_bound(double h, double d, double r, double distortion) {
  require(distortion > 0.0, "shannon_lower_bound: D must be positive");
  return h + (d / r) * std::log(1.0 / distortion) - (d / r) * log_slb_constant(d, r);
}

// Excess rate achieved asymptotically by a tessellating quantizer whose cell
// has normalized r-th moment `ell`.
inline double tessellating_excess(double ell, double d, double r) {
  require(ell > 0.0 && std::isfinite(ell), "tessellating_excess: ell must be positive");
  return (d / r) * log_slb_constant(d, r) + (d / r) * std::log(ell);
}

// Normalized r-th moment of an interval about its midpoint, 1 / (2^r (1+r)).
inline double interval_moment(double r) {
  require(r > 0.0, "interval_moment: r must be positive");
  return std::exp(-r * kLn2 - std::log1p(r));
}

// Zador's random-coding upper bound on the per-dimension excess rate, r = 2.
inline double zador_rc_ub_per_dim(double d) {
  require(d >= 1.0, "zador_rc_ub_per_dim: d must be >= 1");
  return 0.5 * (std::log(2.0 * std::numbers::e / d) + std::lgamma(1.0 + 2.0 / d) +
                (2.0 / d) * std::lgamma(1.0 + 0.5 * d));
}

// excess_rate_lb(d, 2) / d written out for quadratic distortion.
inline double excess_rate_lb_per_dim_quadratic(double d) {
  require(d >= 1.0, "excess_rate_lb_per_dim_quadratic: d must be >= 1");
  return 0.5 * (std::log(2.0 * std::numbers::e / (2.0 + d)) + (2.0 / d) * std::lgamma(1.0 + 0.5 * d));
}

// Per-dimension excess of a lattice quantizer from its dimensionless second
// moment G = ell / d (r = 2): ½ log(2πe G).
inline double lattice_excess_per_dim(double per_dim_G) {
  require(per_dim_G > 0.0, "lattice_excess_per_dim: G must be positive");
  return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * per_dim_G);
}

// Gish-Pierce constant ½ log(πe/6).
inline double gish_pierce() { return excess_rate_lb(1.0, 2.0); }

}  // namespace ecq::bounds
