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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ecq/bounds.hpp"
#include "ecq/lattice.hpp"

namespace ecq::bounds {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

// Reference values from tests/oracles/compute_oracles.py (mpmath).
struct PerDim {
  double d, lb_bits, zador_nats;
};
constexpr PerDim kPerDim[] = {
    {1, 0.25461433482, 1.07236494292},
    {2, 0.221347520444, 0.5},
    {10, 0.119555329645, 0.131343173059},
    {24, 0.0726049627937, 0.0690426097894},
    {1e4, 0.000602707750881, 0.000460050060806},
};

TEST(UnitBallVolume, LowDimensions) {
  EXPECT_NEAR(unit_ball_volume(1), 2.0, 1e-14);
  EXPECT_NEAR(unit_ball_volume(2), kPi, 1e-14);
  EXPECT_NEAR(unit_ball_volume(3), 4 * kPi / 3, 1e-14);
  EXPECT_THROW(unit_ball_volume(0.5), ValidationError);
}

TEST(ExcessRateLb, GishPierce) {
  EXPECT_NEAR(excess_rate_lb(1, 2), 0.5 * std::log(kPi * kE / 6), 1e-15);
  EXPECT_NEAR(to_bits(excess_rate_lb(1, 2)), 0.2546, 5e-5);
  EXPECT_EQ(gish_pierce(), excess_rate_lb(1, 2));
}

TEST(ExcessRateLb, DEqualsR) {
  for (double d : {1.0, 2.0, 3.0, 7.0, 24.0}) EXPECT_NEAR(excess_rate_lb(d, d), std::log(kE / 2), 1e-14) << d;
}

TEST(ExcessRateLb, InvalidArguments) {
  EXPECT_THROW(excess_rate_lb(0, 2), ValidationError);
  EXPECT_THROW(excess_rate_lb(1, 0), ValidationError);
  EXPECT_THROW(excess_rate_lb(1, -1), ValidationError);
}

TEST(ShannonLowerBound, Examples) {
  const double h = 0.5 * std::log(2 * kPi * kE);
  EXPECT_NEAR(shannon_lower_bound(h, 1, 2, 0.01), 0.5 * std::log(100.0), 1e-13);
  EXPECT_NEAR(shannon_lower_bound(0.7, 3, 1.5, 1.0), 0.7 - 2.0 * log_slb_constant(3, 1.5), 1e-14);
  EXPECT_NEAR(std::exp(log_slb_constant(1, 2)), 2 * kPi * kE, 1e-12);
  EXPECT_THROW(shannon_lower_bound(h, 1, 2, 0.0), ValidationError);
}

TEST(TessellatingExcess, ScalarTightness) {
  for (double r : {0.5, 1.0, 2.0, 4.0, 3.3})
    EXPECT_NEAR(tessellating_excess(interval_moment(r), 1, r), excess_rate_lb(1, r), 1e-12) << r;
  EXPECT_NEAR(tessellating_excess(1.0 / 12, 1, 2), 0.5 * std::log(kPi * kE / 6), 1e-14);
  EXPECT_THROW(tessellating_excess(0.0, 1, 2), ValidationError);
}

TEST(TessellatingExcess, Hexagon) {
  const double G = hexagonal_G();
  EXPECT_NEAR(to_bits(tessellating_excess(2 * G, 2, 2) / 2), 0.5 * std::log2(2 * kPi * kE * G), 1e-13);
  EXPECT_NEAR(tessellating_excess(2 * G, 2, 2) / 2, lattice_excess_per_dim(G), 1e-14);
}

TEST(IntervalMoment, Values) {
  EXPECT_NEAR(interval_moment(2), 1.0 / 12, 1e-16);
  EXPECT_NEAR(interval_moment(1), 0.25, 1e-16);
  double prev = interval_moment(0.1);
  for (double r = 0.2; r < 200; r *= 1.3) {
    const double m = interval_moment(r);
    EXPECT_LT(m, prev);
    prev = m;
  }
  EXPECT_LT(interval_moment(500), 1e-100);
}

TEST(PerDimensionBounds, OracleValues) {
  for (const auto& row : kPerDim) {
    EXPECT_NEAR(to_bits(excess_rate_lb_per_dim_quadratic(row.d)), row.lb_bits, 1e-10) << row.d;
    EXPECT_NEAR(zador_rc_ub_per_dim(row.d), row.zador_nats, 1e-10) << row.d;
  }
  EXPECT_NEAR(zador_rc_ub_per_dim(1), 0.5 * std::log(kPi * kE), 1e-14);
  EXPECT_LT(zador_rc_ub_per_dim(1e4), 1e-3);
}

TEST(PerDimensionBounds, FourDecimalValues) {
  EXPECT_NEAR(to_bits(excess_rate_lb_per_dim_quadratic(1)), 0.2546, 5e-5);
  EXPECT_NEAR(to_bits(excess_rate_lb_per_dim_quadratic(10)), 0.1196, 5e-5);
}

TEST(PerDimensionBounds, ConsistentWithGeneralBound) {
  for (int d = 1; d <= 24; ++d)
    EXPECT_NEAR(excess_rate_lb_per_dim_quadratic(d), excess_rate_lb(d, 2) / d, 1e-12) << d;
}

TEST(PerDimensionBounds, SandwichAndMonotone) {
  double prev_lb = INFINITY, prev_ub = INFINITY;
  for (int d = 1; d <= 24; ++d) {
    const double lb = excess_rate_lb_per_dim_quadratic(d), ub = zador_rc_ub_per_dim(d);
    EXPECT_GT(lb, 0.0);
    EXPECT_LE(lb, ub) << d;
    EXPECT_LT(lb, prev_lb) << d;
    EXPECT_LT(ub, prev_ub) << d;
    prev_lb = lb;
    prev_ub = ub;
  }
}

TEST(PerDimensionBounds, ZadorScalarConstant) {
  // the uniform scalar quantizer asymptote -½ log 12 corresponds to ell = 1/12
  const double h = 0.5 * std::log(2 * kPi * kE);
  const double D = 1e-6;
  const double uniform_rate = h - 0.5 * std::log(12 * D);
  EXPECT_NEAR(uniform_rate - shannon_lower_bound(h, 1, 2, D), tessellating_excess(1.0 / 12, 1, 2), 1e-12);
}

TEST(LatticeExcess, BelowZadorAboveLb) {
  // hexagon sits between the bounds in two dimensions
  const double hex = lattice_excess_per_dim(hexagonal_G());
  EXPECT_GT(hex, excess_rate_lb_per_dim_quadratic(2));
  EXPECT_NEAR(lattice_excess_per_dim(1.0 / 12), excess_rate_lb_per_dim_quadratic(1), 1e-14);
}

}  // namespace
}  // namespace ecq::bounds
