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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ecq/errors.hpp"
#include "ecq/numerics.hpp"
#include "ecq/rng.hpp"

namespace ecq {

enum class ScalarFamily { kGaussian, kUniform, kLaplace };

// Unbounded families are truncated at this many scale parameters for
// quadrature; the neglected mass is below 1e-17 for every built-in family.
inline constexpr double kTailScales = 40.0;

// A one-dimensional source. Parameters are (mean, stddev) for Gaussian,
// (lo, hi) for Uniform and (location, scale) for Laplace.
struct ScalarSource {
  ScalarFamily family = ScalarFamily::kGaussian;
  double p1 = 0.0;
  double p2 = 1.0;

  static ScalarSource gaussian(double mean, double stddev) {
    require(stddev > 0.0 && std::isfinite(mean) && std::isfinite(stddev),
            "gaussian: stddev must be positive and parameters finite");
    return {ScalarFamily::kGaussian, mean, stddev};
  }
  static ScalarSource uniform(double lo, double hi) {
    require(std::isfinite(lo) && std::isfinite(hi) && hi > lo, "uniform: need finite lo < hi");
    return {ScalarFamily::kUniform, lo, hi};
  }
  static ScalarSource laplace(double location, double scale) {
    require(scale > 0.0 && std::isfinite(location) && std::isfinite(scale),
            "laplace: scale must be positive and parameters finite");
    return {ScalarFamily::kLaplace, location, scale};
  }

  double pdf(double x) const {
    switch (family) {
      case ScalarFamily::kGaussian: {
        const double z = (x - p1) / p2;
        return std::exp(-0.5 * z * z) / (p2 * std::sqrt(2.0 * std::numbers::pi));
      }
      case ScalarFamily::kUniform:
        return (x >= p1 && x <= p2) ? 1.0 / (p2 - p1) : 0.0;
      case ScalarFamily::kLaplace:
        return std::exp(-std::abs(x - p1) / p2) / (2.0 * p2);
    }
    return 0.0;
  }

  double cdf(double x) const {
    if (x == -std::numeric_limits<double>::infinity()) return 0.0;
    if (x == std::numeric_limits<double>::infinity()) return 1.0;
    switch (family) {
      case ScalarFamily::kGaussian:
        return 0.5 * std::erfc(-(x - p1) / (p2 * std::numbers::sqrt2));
      case ScalarFamily::kUniform:
        return std::clamp((x - p1) / (p2 - p1), 0.0, 1.0);
      case ScalarFamily::kLaplace: {
        const double z = (x - p1) / p2;
        return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
      }
    }
    return 0.0;
  }

  // Survival function 1 - CDF, evaluated without cancellation in the upper tail.
  double sf(double x) const {
    if (x == -std::numeric_limits<double>::infinity()) return 1.0;
    if (x == std::numeric_limits<double>::infinity()) return 0.0;
    switch (family) {
      case ScalarFamily::kGaussian:
        return 0.5 * std::erfc((x - p1) / (p2 * std::numbers::sqrt2));
      case ScalarFamily::kUniform:
        return std::clamp((p2 - x) / (p2 - p1), 0.0, 1.0);
      case ScalarFamily::kLaplace: {
        const double z = (x - p1) / p2;
        return z > 0.0 ? 0.5 * std::exp(-z) : 1.0 - 0.5 * std::exp(z);
      }
    }
    return 0.0;
  }

  double median() const { return family == ScalarFamily::kUniform ? 0.5 * (p1 + p2) : p1; }

  // P(a <= X < b), computed on whichever side of the median avoids
  // subtracting two numbers close to one.
  double interval_mass(double a, double b) const {
    if (!(b > a)) return 0.0;
    if (family == ScalarFamily::kLaplace && std::isfinite(a) && std::isfinite(b)) {
      const double za = (a - p1) / p2;
      const double zb = (b - p1) / p2;
      if (zb <= 0.0) return -0.5 * std::exp(zb) * std::expm1(za - zb);
      if (za >= 0.0) return -0.5 * std::exp(-za) * std::expm1(za - zb);
    }
    const double m = median();
    if (b <= m) return std::max(0.0, cdf(b) - cdf(a));
    if (a >= m) return std::max(0.0, sf(a) - sf(b));
    return std::max(0.0, 1.0 - cdf(a) - sf(b));
  }

  // Interval outside of which the density is zero or negligible.
  double window_lo() const {
    return family == ScalarFamily::kUniform ? p1 : p1 - kTailScales * p2;
  }
  double window_hi() const {
    return family == ScalarFamily::kUniform ? p2 : p1 + kTailScales * p2;
  }
  // Range covered by finely partitioned quantizers; each side outside it
  // carries mass below 1e-18 (9 σ for Gaussian, 41 b for Laplace).
  double coverage_lo() const {
    switch (family) {
      case ScalarFamily::kGaussian: return p1 - 9.0 * p2;
      case ScalarFamily::kUniform: return p1;
      case ScalarFamily::kLaplace: return p1 - 41.0 * p2;
    }
    return p1;
  }
  double coverage_hi() const {
    switch (family) {
      case ScalarFamily::kGaussian: return p1 + 9.0 * p2;
      case ScalarFamily::kUniform: return p2;
      case ScalarFamily::kLaplace: return p1 + 41.0 * p2;
    }
    return p2;
  }
  // Points where the density is not smooth.
  std::vector<double> breakpoints() const {
    switch (family) {
      case ScalarFamily::kGaussian: return {};
      case ScalarFamily::kUniform: return {p1, p2};
      case ScalarFamily::kLaplace: return {p1};
    }
    return {};
  }

  double variance() const {
    switch (family) {
      case ScalarFamily::kGaussian: return p2 * p2;
      case ScalarFamily::kUniform: return (p2 - p1) * (p2 - p1) / 12.0;
      case ScalarFamily::kLaplace: return 2.0 * p2 * p2;
    }
    return 0.0;
  }

  // Differential entropy in nats.
  double analytic_entropy() const {
    switch (family) {
      case ScalarFamily::kGaussian:
        return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * p2 * p2);
      case ScalarFamily::kUniform: return std::log(p2 - p1);
      case ScalarFamily::kLaplace: return 1.0 + std::log(2.0 * p2);
    }
    return 0.0;
  }

  // One draw for sample `index`; component `lane` selects an independent
  // substream so product sources stay i.i.d. across coordinates.
  double sample(const CounterRng& rng, std::uint64_t index, std::uint64_t lane) const {
    switch (family) {
      case ScalarFamily::kGaussian: return p1 + p2 * rng.normal(index, lane);
      case ScalarFamily::kUniform: return p1 + (p2 - p1) * rng.uniform(index, 2 * lane);
      case ScalarFamily::kLaplace: {
        // strictly inside (0, 1)
        const double u = (static_cast<double>(rng.bits(index, 2 * lane) >> 11) + 0.5) * 0x1.0p-53;
        return u < 0.5 ? p1 + p2 * std::log(2.0 * u) : p1 - p2 * std::log(2.0 * (1.0 - u));
      }
    }
    return 0.0;
  }

  std::string name() const {
    const char* fam = family == ScalarFamily::kGaussian  ? "gaussian"
                      : family == ScalarFamily::kUniform ? "uniform"
                                                         : "laplace";
    return std::string(fam) + ":" + format_param(p1) + "," + format_param(p2);
  }

 private:
  static std::string format_param(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  }
};

// A d-dimensional source whose coordinates are independent copies of scalar
// components. d = 1 is the ordinary scalar case.
class SourceModel {
 public:
  explicit SourceModel(ScalarSource component, std::size_t dimension = 1)
      : components_(dimension, component) {
    require(dimension >= 1, "source dimension must be positive");
  }
  explicit SourceModel(std::vector<ScalarSource> components) : components_(std::move(components)) {
    require(!components_.empty(), "source dimension must be positive");
  }

  std::size_t dimension() const { return components_.size(); }
  bool is_scalar() const { return components_.size() == 1; }
  const ScalarSource& scalar() const {
    require(is_scalar(), "operation requires a scalar source");
    return components_.front();
  }
  std::span<const ScalarSource> components() const { return components_; }

  bool is_iid() const {
    return std::all_of(components_.begin(), components_.end(), [&](const ScalarSource& c) {
      return c.family == components_[0].family && c.p1 == components_[0].p1 &&
             c.p2 == components_[0].p2;
    });
  }

  std::optional<double> analytic_entropy() const {
    double h = 0.0;
    for (const auto& c : components_) h += c.analytic_entropy();
    return h;
  }

  std::string name() const {
    if (is_scalar()) return components_[0].name();
    if (is_iid()) return components_[0].name() + "^" + std::to_string(dimension());
    std::string out;
    for (const auto& c : components_) out += (out.empty() ? "" : "*") + c.name();
    return out;
  }

 private:
  std::vector<ScalarSource> components_;
};

// Row-major n x d sample matrix.
struct SampleMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  bool operator==(const SampleMatrix&) const = default;
};

inline double pdf_eval(const SourceModel& source, std::span<const double> x) {
  require(x.size() == source.dimension(), "pdf_eval: dimension mismatch");
  double f = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) f *= source.components()[j].pdf(x[j]);
  return f;
}

// Writes sample `index` of `source` into `out` (length d).
inline void sample_one(const SourceModel& source, const CounterRng& rng, std::uint64_t index,
                       std::span<double> out) {
  const auto comps = source.components();
  for (std::size_t j = 0; j < comps.size(); ++j) out[j] = comps[j].sample(rng, index, j);
}

inline SampleMatrix sample_batch(const SourceModel& source, std::size_t n, std::uint64_t seed) {
  require(n >= 1, "sample_batch: n must be at least 1");
  SampleMatrix m{n, source.dimension(), std::vector<double>(n * source.dimension())};
  const CounterRng rng(seed);
  for (std::size_t i = 0; i < n; ++i) sample_one(source, rng, i, m.row(i));
  return m;
}

// -∫ f log f by adaptive quadrature over the truncated support.
inline double differential_entropy_quadrature(const ScalarSource& s) {
  auto integrand = [&](double x) {
    const double f = s.pdf(x);
    return f > 0.0 ? -f * std::log(f) : 0.0;
  };
  return integrate(integrand, s.window_lo(), s.window_hi(), s.breakpoints(), 1e-12).value;
}

// h(X) in nats. Built-in families always carry the closed form; the
// quadrature path is used per component when it is missing.
inline double differential_entropy(const SourceModel& source) {
  if (auto h = source.analytic_entropy()) return *h;
  double h = 0.0;
  for (const auto& c : source.components()) h += differential_entropy_quadrature(c);
  return h;
}

struct IntegerPartEntropy {
  double value = 0.0;          // nats, truncated sum
  double residual_mass = 0.0;  // probability of the cells not enumerated
  std::size_t cells = 0;
  bool converged = false;
};

inline IntegerPartEntropy integer_part_entropy(const ScalarSource& s, double mass_tolerance,
                                               std::size_t max_cells = 10'000'000) {
  require(mass_tolerance > 0.0 && mass_tolerance <= 1e-6,
          "integer_part_entropy: mass_tolerance must lie in (0, 1e-6]");
  auto term = [&](double k) {
    const double p = s.interval_mass(k, k + 1.0);
    return p > 0.0 ? -p * std::log(p) : 0.0;
  };
  IntegerPartEntropy out;
  CompensatedSum sum;
  double lo = std::floor(s.median());
  double hi = lo + 1.0;  // enumerated cells cover [lo, hi)
  sum.add(term(lo));
  out.cells = 1;
  auto residual = [&] { return s.cdf(lo) + s.sf(hi); };
  while (residual() >= mass_tolerance && out.cells < max_cells) {
    // extend towards the heavier side
    if (s.cdf(lo) >= s.sf(hi)) {
      lo -= 1.0;
      sum.add(term(lo));
    } else {
      sum.add(term(hi));
      hi += 1.0;
    }
    ++out.cells;
  }
  out.value = sum.value();
  out.residual_mass = residual();
  out.converged = out.residual_mass < mass_tolerance;
  return out;
}

// H(⌊X⌋) for a product source is the sum over coordinates.
inline IntegerPartEntropy integer_part_entropy(const SourceModel& source, double mass_tolerance) {
  IntegerPartEntropy total;
  total.converged = true;
  for (const auto& c : source.components()) {
    const auto part = integer_part_entropy(c, mass_tolerance);
    total.value += part.value;
    total.residual_mass += part.residual_mass;
    total.cells += part.cells;
    total.converged = total.converged && part.converged;
  }
  return total;
}

namespace detail {

inline double parse_double(std::string_view text, std::string_view context) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last || text.empty())
    throw ValidationError(std::string(context) + ": cannot parse number '" + std::string(text) + "'");
  return v;
}

inline std::vector<double> parse_list(std::string_view text, std::string_view context,
                                      char sep = ',') {
  std::vector<double> out;
  while (true) {
    const auto pos = text.find(sep);
    out.push_back(parse_double(text.substr(0, pos), context));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return out;
}

}  // namespace detail

// Parses `family:p1,p2[^d]`, e.g. "gaussian:0,1", "laplace:0,1^4".
inline SourceModel parse_source(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw ValidationError("source '" + std::string(spec) + "': expected family:param1,param2");
  const auto family = spec.substr(0, colon);
  auto rest = spec.substr(colon + 1);
  std::size_t dim = 1;
  if (const auto caret = rest.find('^'); caret != std::string_view::npos) {
    const double d = detail::parse_double(rest.substr(caret + 1), "source dimension");
    if (d < 1 || d != std::floor(d) || d > 4096)
      throw ValidationError("source dimension must be a positive integer");
    dim = static_cast<std::size_t>(d);
    rest = rest.substr(0, caret);
  }
  const auto params = detail::parse_list(rest, "source parameters");
  if (params.size() != 2)
    throw ValidationError("source '" + std::string(spec) + "': expected two parameters");
  if (family == "gaussian") return SourceModel(ScalarSource::gaussian(params[0], params[1]), dim);
  if (family == "uniform") return SourceModel(ScalarSource::uniform(params[0], params[1]), dim);
  if (family == "laplace") return SourceModel(ScalarSource::laplace(params[0], params[1]), dim);
  throw ValidationError("unknown source family '" + std::string(family) + "'");
}

}  // namespace ecq
