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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ecq/numerics.hpp"
#include "ecq/rng.hpp"
#include "ecq/sources.hpp"

namespace ecq {
namespace {

// Reference values from tests/oracles/compute_oracles.py (mpmath, 30 digits).
constexpr double kGaussianIntegerPartEntropy = 1.4589588284164409;
constexpr double kPhi1MinusPhi0 = 0.34134474606854295;

std::vector<ScalarSource> all_families() {
  return {ScalarSource::gaussian(0, 1), ScalarSource::gaussian(-2, 3),  ScalarSource::uniform(0, 1),
          ScalarSource::uniform(-1.5, 4), ScalarSource::laplace(0, 1), ScalarSource::laplace(1, 0.25)};
}

TEST(PdfEval, ClosedForms) {
  const std::vector<double> zero{0.0};
  EXPECT_NEAR(pdf_eval(SourceModel(ScalarSource::gaussian(0, 1)), zero), 1.0 / std::sqrt(2 * std::numbers::pi),
              1e-15);
  const SourceModel u(ScalarSource::uniform(0, 1));
  EXPECT_EQ(pdf_eval(u, std::vector<double>{0.5}), 1.0);
  EXPECT_EQ(pdf_eval(u, std::vector<double>{1.5}), 0.0);
  EXPECT_EQ(pdf_eval(u, std::vector<double>{-0.1}), 0.0);
  const SourceModel g2(ScalarSource::gaussian(0, 1), 2);
  EXPECT_NEAR(pdf_eval(g2, std::vector<double>{0.0, 0.0}), 1.0 / (2 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(pdf_eval(SourceModel(ScalarSource::laplace(0, 1)), zero), 0.5, 1e-15);
}

TEST(PdfEval, DimensionMismatchRejected) {
  const SourceModel g2(ScalarSource::gaussian(0, 1), 2);
  EXPECT_THROW(pdf_eval(g2, std::vector<double>{0.0}), ValidationError);
}

TEST(ScalarSource, InvalidParametersRejected) {
  EXPECT_THROW(ScalarSource::gaussian(0, 0), ValidationError);
  EXPECT_THROW(ScalarSource::gaussian(0, -1), ValidationError);
  EXPECT_THROW(ScalarSource::uniform(1, 1), ValidationError);
  EXPECT_THROW(ScalarSource::uniform(2, 1), ValidationError);
  EXPECT_THROW(ScalarSource::laplace(0, 0), ValidationError);
  EXPECT_THROW(ScalarSource::gaussian(std::nan(""), 1), ValidationError);
}

TEST(ScalarSource, PdfIntegratesToOne) {
  for (const auto& s : all_families()) {
    const auto mass = integrate([&](double x) { return s.pdf(x); }, s.window_lo(), s.window_hi(), s.breakpoints());
    EXPECT_NEAR(mass.value, 1.0, 1e-6) << s.name();
  }
}

TEST(ScalarSource, CdfLimitsAndMonotonicity) {
  for (const auto& s : all_families()) {
    EXPECT_EQ(s.cdf(-1e300), 0.0) << s.name();
    EXPECT_EQ(s.cdf(1e300), 1.0) << s.name();
    double prev = 0.0;
    for (double x = -50; x <= 50; x += 0.01) {
      const double c = s.cdf(x);
      ASSERT_GE(c, prev) << s.name() << " at " << x;
      prev = c;
    }
  }
}

TEST(ScalarSource, CdfDerivativeMatchesPdf) {
  const CounterRng rng(11);
  const double h = 1e-6;
  for (const auto& s : all_families()) {
    const double lo = s.coverage_lo(), hi = s.coverage_hi();
    int checked = 0;
    for (std::uint64_t i = 0; i < 10'000; ++i) {
      const double x = lo + (hi - lo) * rng.uniform(i, 0);
      const double f = s.pdf(x);
      if (f <= 1e-3) continue;
      // skip the kinks of uniform and Laplace
      const auto bp = s.breakpoints();
      if (std::any_of(bp.begin(), bp.end(), [&](double b) { return std::abs(b - x) < 2 * h; })) continue;
      const double fd = (s.cdf(x + h) - s.cdf(x)) / h;
      ASSERT_NEAR(fd, f, 1e-3 * f) << s.name() << " at " << x;
      ++checked;
    }
    EXPECT_GT(checked, 1000) << s.name();
  }
}

TEST(ScalarSource, IntervalMassMatchesOracle) {
  const auto g = ScalarSource::gaussian(0, 1);
  EXPECT_NEAR(g.interval_mass(0, 1), kPhi1MinusPhi0, 1e-16);
  // far tail keeps relative accuracy
  const double tail = g.interval_mass(10, 11);
  EXPECT_NEAR(tail / (0.5 * std::erfc(10 / std::numbers::sqrt2) - 0.5 * std::erfc(11 / std::numbers::sqrt2)), 1.0,
              1e-12);
  EXPECT_GT(g.interval_mass(-12, -11), 0.0);
  const auto l = ScalarSource::laplace(0, 1);
  EXPECT_NEAR(l.interval_mass(30, 31), 0.5 * (std::exp(-30.0) - std::exp(-31.0)), 1e-25);
}

TEST(SampleBatch, UniformMean) {
  const auto m = sample_batch(SourceModel(ScalarSource::uniform(0, 1)), 1'000'000, 5);
  CompensatedSum s;
  for (double v : m.data) s.add(v);
  EXPECT_NEAR(s.value() / 1e6, 0.5, 0.002);
}

TEST(SampleBatch, GaussianVariance) {
  const auto m = sample_batch(SourceModel(ScalarSource::gaussian(0, 1)), 1'000'000, 6);
  RunningStats st;
  for (double v : m.data) st.add(v);
  EXPECT_NEAR(st.variance(), 1.0, 0.01);
}

TEST(SampleBatch, Deterministic) {
  const SourceModel src(ScalarSource::laplace(0, 1), 3);
  EXPECT_EQ(sample_batch(src, 1000, 42), sample_batch(src, 1000, 42));
  EXPECT_NE(sample_batch(src, 1000, 42), sample_batch(src, 1000, 43));
}

TEST(SampleBatch, PrefixStable) {
  // counter-based: the first k rows do not depend on n
  const SourceModel src(ScalarSource::gaussian(0, 1), 2);
  const auto small = sample_batch(src, 100, 9);
  const auto large = sample_batch(src, 1000, 9);
  EXPECT_TRUE(std::equal(small.data.begin(), small.data.end(), large.data.begin()));
}

TEST(SampleBatch, DisjointSeedsUncorrelated) {
  const SourceModel src(ScalarSource::gaussian(0, 1));
  const auto a = sample_batch(src, 200'000, 1);
  const auto b = sample_batch(src, 200'000, 2);
  double dot = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) dot += a.data[i] * b.data[i];
  EXPECT_LT(std::abs(dot / 200'000.0), 5.0 / std::sqrt(200'000.0));
}

TEST(SampleBatch, RejectsZeroCount) {
  EXPECT_THROW(sample_batch(SourceModel(ScalarSource::gaussian(0, 1)), 0, 1), ValidationError);
}

TEST(SampleBatch, KolmogorovSmirnov) {
  for (const auto& s : all_families()) {
    auto m = sample_batch(SourceModel(s), 1'000'000, 77);
    std::sort(m.data.begin(), m.data.end());
    const double n = static_cast<double>(m.data.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < m.data.size(); ++i) {
      const double c = s.cdf(m.data[i]);
      ks = std::max({ks, std::abs(c - i / n), std::abs((i + 1) / n - c)});
    }
    EXPECT_LE(ks, 0.002) << s.name();
  }
}

TEST(DifferentialEntropy, ClosedForms) {
  EXPECT_NEAR(differential_entropy(SourceModel(ScalarSource::gaussian(0, 1))),
              0.5 * std::log(2 * std::numbers::pi * std::numbers::e), 1e-14);
  EXPECT_NEAR(differential_entropy(SourceModel(ScalarSource::uniform(0, 1))), 0.0, 1e-15);
  EXPECT_NEAR(differential_entropy(SourceModel(ScalarSource::laplace(0, 1))), 1 + std::log(2.0), 1e-14);
  EXPECT_NEAR(differential_entropy(SourceModel(ScalarSource::gaussian(0, 1), 3)),
              1.5 * std::log(2 * std::numbers::pi * std::numbers::e), 1e-13);
}

TEST(DifferentialEntropy, QuadratureAgreesWithClosedForm) {
  for (const auto& s : all_families())
    EXPECT_NEAR(differential_entropy_quadrature(s), s.analytic_entropy(), 1e-4) << s.name();
}

TEST(IntegerPartEntropy, Examples) {
  auto u1 = integer_part_entropy(SourceModel(ScalarSource::uniform(0, 1)), 1e-9);
  EXPECT_EQ(u1.value, 0.0);
  EXPECT_TRUE(u1.converged);
  auto u2 = integer_part_entropy(SourceModel(ScalarSource::uniform(0, 2)), 1e-9);
  EXPECT_NEAR(u2.value, std::log(2.0), 1e-15);
  auto g = integer_part_entropy(SourceModel(ScalarSource::gaussian(0, 1)), 1e-12);
  EXPECT_TRUE(g.converged);
  EXPECT_LT(g.residual_mass, 1e-12);
  EXPECT_NEAR(g.value, kGaussianIntegerPartEntropy, 1e-12);
}

TEST(IntegerPartEntropy, FiniteForAllFamilies) {
  for (const auto& s : all_families()) {
    const auto h = integer_part_entropy(s, 1e-10);
    EXPECT_TRUE(h.converged) << s.name();
    EXPECT_TRUE(std::isfinite(h.value)) << s.name();
    EXPECT_GE(h.value, 0.0) << s.name();
  }
}

TEST(IntegerPartEntropy, ProductIsSum) {
  const auto one = integer_part_entropy(SourceModel(ScalarSource::laplace(0, 1)), 1e-10);
  const auto three = integer_part_entropy(SourceModel(ScalarSource::laplace(0, 1), 3), 1e-10);
  EXPECT_NEAR(three.value, 3 * one.value, 1e-13);
}

TEST(IntegerPartEntropy, ToleranceValidated) {
  const SourceModel g(ScalarSource::gaussian(0, 1));
  EXPECT_THROW(integer_part_entropy(g, 0.0), ValidationError);
  EXPECT_THROW(integer_part_entropy(g, 1e-5), ValidationError);
}

TEST(IntegerPartEntropy, IterationCapReportsNonconvergence) {
  // a very wide source cannot be covered by 100 unit cells
  const auto wide = integer_part_entropy(ScalarSource::gaussian(0, 1e6), 1e-9, 100);
  EXPECT_FALSE(wide.converged);
  EXPECT_GT(wide.residual_mass, 0.9);
}

TEST(ParseSource, Formats) {
  const auto g = parse_source("gaussian:0,1");
  EXPECT_TRUE(g.is_scalar());
  EXPECT_EQ(g.scalar().family, ScalarFamily::kGaussian);
  const auto l4 = parse_source("laplace:0,1^4");
  EXPECT_EQ(l4.dimension(), 4u);
  EXPECT_TRUE(l4.is_iid());
  EXPECT_EQ(parse_source("uniform:0,1").scalar().p2, 1.0);
}

TEST(ParseSource, Errors) {
  EXPECT_THROW(parse_source("gaussian"), ValidationError);
  EXPECT_THROW(parse_source("cauchy:0,1"), ValidationError);
  EXPECT_THROW(parse_source("gaussian:0"), ValidationError);
  EXPECT_THROW(parse_source("gaussian:0,x"), ValidationError);
  EXPECT_THROW(parse_source("gaussian:0,1^0"), ValidationError);
  EXPECT_THROW(parse_source("gaussian:0,-1"), ValidationError);
}

TEST(RunBlocks, ShardingIndependent) {
  const CounterRng rng(3);
  const std::size_t n = 5 * kMcBlock + 17;
  auto body = [&](std::size_t b, std::size_t e) {
    RunningStats st;
    for (std::size_t i = b; i < e; ++i) st.add(rng.normal(i, 0));
    return st;
  };
  auto merged = [&](unsigned workers) {
    RunningStats total;
    for (const auto& st : run_blocks<RunningStats>(n, body, workers)) total.merge(st);
    return total;
  };
  const auto a = merged(1), b = merged(3), c = merged(8);
  EXPECT_EQ(a.mean(), b.mean());
  EXPECT_EQ(a.mean(), c.mean());
  EXPECT_EQ(a.variance(), c.variance());
  EXPECT_EQ(a.count(), n);
}

}  // namespace
}  // namespace ecq
