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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ecq/errors.hpp"
#include "ecq/lattice.hpp"
#include "ecq/numerics.hpp"
#include "ecq/rng.hpp"
#include "ecq/sources.hpp"

namespace ecq {

enum class QuantizerKind { kUniform, kAlmostRegular, kCustom };
enum class Reconstruction { kMidpoint, kCentroid };

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kMaxScalarCells = 50'000'000;

// Interval partition of the real line. Boundaries b_1 < ... < b_{m-1} define
// m cells (-inf, b_1), [b_1, b_2), ..., [b_{m-1}, inf); cells are left-closed,
// right-open. The two outer cells are unbounded.
class ScalarQuantizer {
 public:
  ScalarQuantizer(std::vector<double> boundaries, std::vector<double> reconstructions,
                  QuantizerKind kind = QuantizerKind::kCustom)
      : boundaries_(std::move(boundaries)), recon_(std::move(reconstructions)), kind_(kind) {
    require(recon_.size() == boundaries_.size() + 1,
            "scalar quantizer: need one reconstruction per cell");
    for (std::size_t i = 0; i < boundaries_.size(); ++i) {
      require(std::isfinite(boundaries_[i]), "scalar quantizer: boundaries must be finite");
      if (i > 0) require(boundaries_[i] > boundaries_[i - 1], "scalar quantizer: boundaries must increase");
    }
    for (double v : recon_) require(std::isfinite(v), "scalar quantizer: reconstructions must be finite");
  }

  // Uniform midpoint quantizer with cells [offset + kΔ, offset + (k+1)Δ)
  // covering [lo, hi].
  static ScalarQuantizer uniform(double step, double offset, double lo, double hi) {
    require(step > 0.0 && std::isfinite(step), "uniform quantizer: step must be positive");
    require(hi > lo, "uniform quantizer: empty range");
    const double k_lo = std::floor((lo - offset) / step);
    const double k_hi = std::ceil((hi - offset) / step);
    require(k_hi - k_lo < static_cast<double>(kMaxScalarCells), "uniform quantizer: too many cells");
    std::vector<double> b;
    b.reserve(static_cast<std::size_t>(k_hi - k_lo) + 1);
    for (double k = k_lo; k <= k_hi; k += 1.0) b.push_back(offset + k * step);
    ScalarQuantizer q(b, midpoints(b, step), QuantizerKind::kUniform);
    q.step_ = step;
    q.offset_ = offset;
    q.pattern_ = {1.0};
    return q;
  }

  static ScalarQuantizer uniform_for(const ScalarSource& s, double step, double offset = 0.0) {
    return uniform(step, offset, s.coverage_lo(), s.coverage_hi());
  }

  // Cells of length step * pattern[j], repeated periodically from `offset` in
  // both directions, covering [lo, hi]. Midpoint reconstructions.
  static ScalarQuantizer almost_regular(std::span<const double> pattern, double step, double offset,
                                        double lo, double hi) {
    require(!pattern.empty(), "almost-regular quantizer: empty pattern");
    for (double p : pattern) require(p > 0.0 && std::isfinite(p), "almost-regular quantizer: pattern entries must be positive");
    require(step > 0.0 && std::isfinite(step), "almost-regular quantizer: step must be positive");
    require(hi > lo, "almost-regular quantizer: empty range");
    std::vector<double> prefix{0.0};
    for (double p : pattern) prefix.push_back(prefix.back() + p * step);
    const double period = prefix.back();
    prefix.pop_back();
    const double q_lo = std::floor((lo - offset) / period);
    const double q_hi = std::ceil((hi - offset) / period);
    require((q_hi - q_lo) * static_cast<double>(pattern.size()) < static_cast<double>(kMaxScalarCells),
            "almost-regular quantizer: too many cells");
    std::vector<double> b;
    for (double q = q_lo; q < q_hi; q += 1.0)
      for (double pre : prefix) b.push_back(offset + (q * period + pre));
    b.push_back(offset + q_hi * period);
    ScalarQuantizer out(b, midpoints(b, step * pattern[0]),
                        pattern.size() == 1 ? QuantizerKind::kUniform : QuantizerKind::kAlmostRegular);
    out.step_ = step;
    out.offset_ = offset;
    out.pattern_.assign(pattern.begin(), pattern.end());
    return out;
  }

  std::size_t cell_count() const { return recon_.size(); }
  const std::vector<double>& boundaries() const { return boundaries_; }
  const std::vector<double>& reconstructions() const { return recon_; }
  QuantizerKind kind() const { return kind_; }
  double step() const { return step_; }
  double offset() const { return offset_; }
  const std::vector<double>& pattern() const { return pattern_; }

  double left(std::size_t i) const { return i == 0 ? -kInf : boundaries_[i - 1]; }
  double right(std::size_t i) const { return i + 1 == recon_.size() ? kInf : boundaries_[i]; }
  double length(std::size_t i) const { return right(i) - left(i); }
  bool is_tail(std::size_t i) const { return i == 0 || i + 1 == recon_.size(); }
  double reconstruction(std::size_t i) const { return recon_[i]; }

  std::size_t cell_of(double x) const {
    return static_cast<std::size_t>(std::upper_bound(boundaries_.begin(), boundaries_.end(), x) -
                                    boundaries_.begin());
  }

  // Same cells, new reconstruction points.
  ScalarQuantizer with_reconstructions(std::vector<double> recon) const {
    ScalarQuantizer q = *this;
    require(recon.size() == recon_.size(), "with_reconstructions: size mismatch");
    q.recon_ = std::move(recon);
    return q;
  }

 private:
  static std::vector<double> midpoints(const std::vector<double>& b, double tail_len) {
    std::vector<double> r;
    r.reserve(b.size() + 1);
    r.push_back(b.front() - 0.5 * tail_len);
    for (std::size_t i = 0; i + 1 < b.size(); ++i) r.push_back(0.5 * (b[i] + b[i + 1]));
    r.push_back(b.back() + 0.5 * tail_len);
    return r;
  }

  std::vector<double> boundaries_;
  std::vector<double> recon_;
  QuantizerKind kind_ = QuantizerKind::kCustom;
  double step_ = 0.0;
  double offset_ = 0.0;
  std::vector<double> pattern_;
};

// q(x) = α · nearest_point(x / α) on the lattice's Voronoi cells. For An the
// d-dimensional input is mapped isometrically onto the sum-zero hyperplane.
class LatticeQuantizer {
 public:
  explicit LatticeQuantizer(Lattice lattice) : lattice_(std::move(lattice)) {
    if (lattice_.family() == LatticeFamily::kAn) {
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(lattice_.generator().transpose());
      const auto m = static_cast<Eigen::Index>(lattice_.ambient_dimension());
      const auto d = static_cast<Eigen::Index>(lattice_.dimension());
      embed_ = (qr.householderQ() * Eigen::MatrixXd::Identity(m, d)).transpose();  // d x m
    }
  }
  LatticeQuantizer(Lattice lattice, double scale) : LatticeQuantizer(lattice.scaled(scale)) {}

  const Lattice& lattice() const { return lattice_; }
  double scale() const { return lattice_.scale(); }
  std::size_t dimension() const { return lattice_.dimension(); }

  struct Output {
    std::vector<long long> label;
    std::vector<double> reconstruction;
  };

  Output quantize(std::span<const double> x) const {
    require(x.size() == dimension(), "lattice quantize: dimension mismatch");
    std::vector<double> recon(dimension());
    std::vector<double> ambient_point(lattice_.ambient_dimension());
    quantize_into(x, recon, ambient_point);
    return {lattice_.label(ambient_point), recon};
  }

  // Writes q(x) (source coordinates) into `recon` and the lattice point in
  // ambient coordinates into `ambient_point`.
  void quantize_into(std::span<const double> x, std::span<double> recon,
                     std::span<double> ambient_point) const {
    if (embed_.size() == 0) {
      lattice_.nearest_point(x, ambient_point);
      std::copy(ambient_point.begin(), ambient_point.end(), recon.begin());
      return;
    }
    const auto d = static_cast<Eigen::Index>(dimension());
    const auto m = static_cast<Eigen::Index>(lattice_.ambient_dimension());
    thread_local std::vector<double> lifted;
    lifted.assign(static_cast<std::size_t>(m), 0.0);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < m; ++j) lifted[static_cast<std::size_t>(j)] += x[static_cast<std::size_t>(i)] * embed_(i, j);
    lattice_.nearest_point(lifted, ambient_point);
    for (Eigen::Index i = 0; i < d; ++i) {
      double s = 0.0;
      for (Eigen::Index j = 0; j < m; ++j) s += ambient_point[static_cast<std::size_t>(j)] * embed_(i, j);
      recon[static_cast<std::size_t>(i)] = s;
    }
  }

 private:
  Lattice lattice_;
  Eigen::MatrixXd embed_;
};

struct ScalarQuantization {
  std::size_t cell = 0;
  double reconstruction = 0.0;
};

inline ScalarQuantization quantize(const ScalarQuantizer& q, double x) {
  const std::size_t i = q.cell_of(x);
  return {i, q.reconstruction(i)};
}

inline LatticeQuantizer::Output quantize(const LatticeQuantizer& q, std::span<const double> x) {
  return q.quantize(x);
}

// ---------------------------------------------------------------------------
// Exact evaluation for scalar sources.

struct CellProbabilities {
  std::size_t first_cell = 0;  // index of p.front()
  std::vector<double> p;       // contiguous cells first_cell, first_cell + 1, ...
  double residual_mass = 0.0;  // mass of the cells not listed
  std::size_t residual_cells = 0;
};

// p_i = P(X ∈ S_i) by CDF differences for every cell that meets the region
// where the CDF lies in [tol, 1 - tol]; the rest is lumped into residual_mass.
inline CellProbabilities cell_probabilities(const ScalarQuantizer& q, const ScalarSource& s,
                                            double mass_tolerance = 1e-14) {
  require(mass_tolerance >= 0.0 && mass_tolerance < 0.5, "cell_probabilities: bad mass tolerance");
  const std::size_t m = q.cell_count();
  std::size_t first = 0;
  while (first + 1 < m && s.cdf(q.right(first)) < mass_tolerance) ++first;
  std::size_t last = m - 1;
  while (last > first && s.sf(q.left(last)) < mass_tolerance) --last;
  CellProbabilities out;
  out.first_cell = first;
  out.p.reserve(last - first + 1);
  for (std::size_t i = first; i <= last; ++i) out.p.push_back(s.interval_mass(q.left(i), q.right(i)));
  out.residual_mass = s.cdf(q.left(first)) + s.sf(q.right(last));
  out.residual_cells = m - out.p.size();
  CompensatedSum total;
  for (double p : out.p) total.add(p);
  total.add(out.residual_mass);
  if (std::abs(total.value() - 1.0) > 1e-9)
    throw NonconvergenceError("cell_probabilities: cell masses do not sum to one");
  return out;
}

struct ExactScalar {
  double mass_tolerance = 1e-14;
};
struct MonteCarlo {
  std::size_t n = 1'000'000;
  std::uint64_t seed = 0;
};
using EvalMode = std::variant<ExactScalar, MonteCarlo>;

// Entropy in nats. For exact evaluation the true value lies in
// [value, value + error]; for Monte Carlo `error` is a standard error.
struct EntropyEstimate {
  double value = 0.0;
  double error = 0.0;
  double miller_madow = 0.0;  // correction already included in value
  std::size_t distinct_cells = 0;
  bool unreliable = false;    // fewer than 100 samples per observed cell
};

struct DistortionEstimate {
  double value = 0.0;
  double error = 0.0;  // quadrature error bound, or standard error
  bool exact = false;
};

struct QuantizerReport {
  double distortion = 0.0;
  double distortion_err = 0.0;
  double entropy_nats = 0.0;
  double entropy_err = 0.0;
  double r = 2.0;
  std::string method;  // "exact_scalar" or "mc"
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double miller_madow = 0.0;
  bool unreliable = false;
};

inline double entropy_of(std::span<const double> p) {
  CompensatedSum h;
  for (double v : p)
    if (v > 0.0) h.add(-v * std::log(v));
  return h.value();
}

inline EntropyEstimate exact_entropy(const ScalarQuantizer& q, const ScalarSource& s,
                                     double mass_tolerance = 1e-14) {
  const auto cells = cell_probabilities(q, s, mass_tolerance);
  EntropyEstimate e;
  e.value = entropy_of(cells.p);
  const double eps = cells.residual_mass;
  // Excluded cells carry total mass eps spread over at most K cells, so they
  // add at most eps log(K / eps).
  if (eps > 0.0 && cells.residual_cells > 0)
    e.error = -eps * std::log(eps) + eps * std::log(static_cast<double>(cells.residual_cells));
  e.distinct_cells = static_cast<std::size_t>(std::count_if(cells.p.begin(), cells.p.end(), [](double v) { return v > 0.0; }));
  return e;
}

namespace detail {

inline double abs_pow(double t, double r) {
  t = std::abs(t);
  return r == 2.0 ? t * t : (r == 1.0 ? t : std::pow(t, r));
}

// ∫_{[a,b) ∩ window} |x - c|^r f(x) dx.
inline Integral cell_moment(const ScalarSource& s, double a, double b, double c, double r) {
  const double lo = std::max(a, s.window_lo());
  const double hi = std::min(b, s.window_hi());
  if (!(hi > lo)) return {};
  auto breaks = s.breakpoints();
  if (!(r == 2.0 || r == 4.0)) breaks.push_back(c);  // |x - c|^r is smooth for even r
  return integrate([&](double x) { return abs_pow(x - c, r) * s.pdf(x); }, lo, hi, std::move(breaks), 1e-12);
}

}  // namespace detail

inline DistortionEstimate exact_distortion(const ScalarQuantizer& q, const ScalarSource& s, double r) {
  require(r > 0.0, "distortion: r must be positive");
  CompensatedSum total;
  double err = 0.0;
  for (std::size_t i = 0; i < q.cell_count(); ++i) {
    const double a = q.left(i), b = q.right(i);
    if (b <= s.window_lo() || a >= s.window_hi()) continue;
    if (s.interval_mass(a, b) < 1e-200) continue;
    const auto part = detail::cell_moment(s, a, b, q.reconstruction(i), r);
    total.add(part.value);
    err += part.error;
  }
  return {total.value(), err, true};
}

// Plug-in entropy with the Miller-Madow bias correction (K - 1) / (2n).
inline EntropyEstimate plugin_entropy(std::span<const std::size_t> counts, std::size_t n) {
  EntropyEstimate e;
  CompensatedSum h, h2;
  const double dn = static_cast<double>(n);
  for (std::size_t c : counts) {
    if (c == 0) continue;
    ++e.distinct_cells;
    const double p = static_cast<double>(c) / dn;
    const double l = -std::log(p);
    h.add(p * l);
    h2.add(p * l * l);
  }
  e.miller_madow = (static_cast<double>(e.distinct_cells) - 1.0) / (2.0 * dn);
  e.value = h.value() + e.miller_madow;
  e.error = std::sqrt(std::max(0.0, h2.value() - h.value() * h.value()) / dn);
  e.unreliable = n < 100 * e.distinct_cells;
  return e;
}

inline QuantizerReport evaluate(const ScalarQuantizer& q, const SourceModel& source, double r,
                                const EvalMode& mode) {
  require(r > 0.0, "evaluate: r must be positive");
  require(source.is_scalar(), "scalar quantizer needs a scalar source");
  const ScalarSource& s = source.scalar();
  QuantizerReport rep;
  rep.r = r;
  if (const auto* exact = std::get_if<ExactScalar>(&mode)) {
    const auto h = exact_entropy(q, s, exact->mass_tolerance);
    const auto d = exact_distortion(q, s, r);
    rep.entropy_nats = h.value;
    rep.entropy_err = h.error;
    rep.distortion = d.value;
    rep.distortion_err = d.error;
    rep.method = "exact_scalar";
    return rep;
  }
  const auto& mc = std::get<MonteCarlo>(mode);
  require(mc.n >= 1, "evaluate: need at least one sample");
  const CounterRng rng(mc.seed);
  std::vector<std::size_t> counts(q.cell_count(), 0);
  RunningStats dist;
  for (std::size_t i = 0; i < mc.n; ++i) {
    const double x = s.sample(rng, i, 0);
    const auto cell = q.cell_of(x);
    ++counts[cell];
    dist.add(detail::abs_pow(x - q.reconstruction(cell), r));
  }
  const auto h = plugin_entropy(counts, mc.n);
  rep.distortion = dist.mean();
  rep.distortion_err = dist.std_error();
  rep.entropy_nats = h.value;
  rep.entropy_err = h.error;
  rep.miller_madow = h.miller_madow;
  rep.unreliable = h.unreliable;
  rep.method = "mc";
  rep.n = mc.n;
  rep.seed = mc.seed;
  return rep;
}

// Lattice quantizers are evaluated by Monte Carlo only.
inline QuantizerReport evaluate(const LatticeQuantizer& q, const SourceModel& source, double r,
                                const MonteCarlo& mc) {
  require(r > 0.0, "evaluate: r must be positive");
  require(source.dimension() == q.dimension(), "lattice quantizer: source dimension mismatch");
  require(mc.n >= 1, "evaluate: need at least one sample");
  const CounterRng rng(mc.seed);
  const std::size_t d = q.dimension();
  std::vector<double> x(d), recon(d), ambient(q.lattice().ambient_dimension());
  std::map<std::vector<long long>, std::size_t> counts;
  RunningStats dist;
  for (std::size_t i = 0; i < mc.n; ++i) {
    sample_one(source, rng, i, x);
    q.quantize_into(x, recon, ambient);
    double norm2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) norm2 += (x[j] - recon[j]) * (x[j] - recon[j]);
    dist.add(r == 2.0 ? norm2 : std::pow(norm2, 0.5 * r));
    // doubled ambient coordinates are integers for every supported family
    std::vector<long long> key(ambient.size());
    for (std::size_t j = 0; j < ambient.size(); ++j) key[j] = std::llround(2.0 * ambient[j] / q.scale());
    ++counts[key];
  }
  std::vector<std::size_t> c;
  c.reserve(counts.size());
  for (const auto& [key, v] : counts) c.push_back(v);
  const auto h = plugin_entropy(c, mc.n);
  QuantizerReport rep;
  rep.r = r;
  rep.distortion = dist.mean();
  rep.distortion_err = dist.std_error();
  rep.entropy_nats = h.value;
  rep.entropy_err = h.error;
  rep.miller_madow = h.miller_madow;
  rep.unreliable = h.unreliable;
  rep.method = "mc";
  rep.n = mc.n;
  rep.seed = mc.seed;
  return rep;
}

inline EntropyEstimate output_entropy(const ScalarQuantizer& q, const SourceModel& source,
                                      const EvalMode& mode) {
  const auto rep = evaluate(q, source, 2.0, mode);
  EntropyEstimate e;
  e.value = rep.entropy_nats;
  e.error = rep.entropy_err;
  e.miller_madow = rep.miller_madow;
  e.unreliable = rep.unreliable;
  return e;
}

inline DistortionEstimate distortion(const ScalarQuantizer& q, const SourceModel& source, double r,
                                     const EvalMode& mode) {
  if (std::holds_alternative<ExactScalar>(mode)) return exact_distortion(q, source.scalar(), r);
  const auto rep = evaluate(q, source, r, mode);
  return {rep.distortion, rep.distortion_err, false};
}

// Conditional mean of each cell; cells without mass keep their current point.
inline ScalarQuantizer with_centroids(const ScalarQuantizer& q, const ScalarSource& s) {
  std::vector<double> recon = q.reconstructions();
  for (std::size_t i = 0; i < q.cell_count(); ++i) {
    const double lo = std::max(q.left(i), s.window_lo());
    const double hi = std::min(q.right(i), s.window_hi());
    if (!(hi > lo)) continue;
    const double mass = integrate([&](double x) { return s.pdf(x); }, lo, hi, s.breakpoints()).value;
    if (!(mass > 1e-300)) continue;
    const double first = integrate([&](double x) { return x * s.pdf(x); }, lo, hi, s.breakpoints()).value;
    recon[i] = std::clamp(first / mass, lo, hi);
  }
  return q.with_reconstructions(std::move(recon));
}

inline ScalarQuantizer make_almost_regular(std::span<const double> pattern, double step,
                                           const ScalarSource& s,
                                           Reconstruction recon = Reconstruction::kMidpoint,
                                           double offset = 0.0) {
  auto q = ScalarQuantizer::almost_regular(pattern, step, offset, s.coverage_lo(), s.coverage_hi());
  return recon == Reconstruction::kCentroid ? with_centroids(q, s) : q;
}

// ---------------------------------------------------------------------------
// Calibration.

struct Calibration {
  ScalarQuantizer quantizer;
  double step = 0.0;
  double achieved_distortion = 0.0;
  int iterations = 0;
};

// Bisection on the base step of a one-parameter family until the exact
// distortion lies in [target (1 - rel_tol), target].
inline Calibration calibrate_step(const std::function<ScalarQuantizer(double)>& family,
                                  const ScalarSource& s, double r, double target,
                                  double initial_step, double rel_tol = 1e-6, int max_iter = 200) {
  require(target > 0.0 && std::isfinite(target), "calibrate: target distortion must be positive");
  require(r > 0.0, "calibrate: r must be positive");
  auto dist_at = [&](double step) { return exact_distortion(family(step), s, r).value; };
  auto accept = [&](double d) { return d <= target && d >= target * (1.0 - rel_tol); };
  int it = 0;
  // Distortion scales like step^r at high resolution: a few power-law secant
  // steps aimed at the middle of the acceptance band usually land inside it.
  double step = initial_step;
  double lo = 0.0, d_lo = 0.0, hi = kInf, d_hi = kInf;
  for (; it < 8; ++it) {
    const double d = dist_at(step);
    if (accept(d)) return {family(step), step, d, it + 1};
    if (d <= target && step > lo) {
      lo = step;
      d_lo = d;
    }
    if (d > target && step < hi) {
      hi = step;
      d_hi = d;
    }
    if (!(d > 0.0)) break;
    double next = step * std::pow(target * (1.0 - 0.5 * rel_tol) / d, 1.0 / r);
    if (next <= lo || next >= hi) break;
    step = next;
  }
  if (lo == 0.0) {
    lo = std::isfinite(hi) ? hi : initial_step;
    d_lo = dist_at(lo);
    while (d_lo > target && it < 60) {
      hi = lo;
      d_hi = d_lo;
      lo *= 0.5;
      d_lo = dist_at(lo);
      ++it;
    }
  }
  if (!std::isfinite(hi)) {
    hi = lo;
    d_hi = d_lo;
    while (d_hi <= target && it < 120) {
      if (accept(d_hi)) return {family(hi), hi, d_hi, it};
      lo = hi;
      d_lo = d_hi;
      hi *= 2.0;
      d_hi = dist_at(hi);
      ++it;
    }
  }
  if (d_lo > target || d_hi <= target) {
    std::ostringstream msg;
    msg << "calibrate: could not bracket D=" << target << "; achieved interval [" << d_lo << ", "
        << d_hi << "]";
    throw NonconvergenceError(msg.str());
  }
  for (; it < max_iter; ++it) {
    if (d_lo >= target * (1.0 - rel_tol)) return {family(lo), lo, d_lo, it};
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double d_mid = dist_at(mid);
    if (d_mid <= target) {
      lo = mid;
      d_lo = d_mid;
    } else {
      hi = mid;
      d_hi = d_mid;
    }
  }
  if (d_lo >= target * (1.0 - rel_tol)) return {family(lo), lo, d_lo, it};
  std::ostringstream msg;
  msg << "calibrate: bisection stalled for D=" << target << "; achieved interval [" << d_lo << ", "
      << d_hi << "]";
  throw NonconvergenceError(msg.str());
}

// High-resolution guess for the uniform step: Δ = 2 (1+r)^{1/r} D^{1/r}.
inline double high_resolution_step(double r, double target) {
  return 2.0 * std::pow((1.0 + r) * target, 1.0 / r);
}

inline Calibration calibrate_uniform(const ScalarSource& s, double r, double target, double offset = 0.0) {
  return calibrate_step([&](double step) { return ScalarQuantizer::uniform_for(s, step, offset); }, s, r,
                        target, high_resolution_step(r, target));
}

inline ScalarQuantizer calibrate_uniform_step(const ScalarSource& s, double r, double target,
                                              double offset = 0.0) {
  return calibrate_uniform(s, r, target, offset).quantizer;
}

inline Calibration calibrate_pattern(std::span<const double> pattern, const ScalarSource& s, double r,
                                     double target, double offset = 0.0) {
  const std::vector<double> pat(pattern.begin(), pattern.end());
  double mean_len = 0.0;
  for (double p : pat) mean_len += p / static_cast<double>(pat.size());
  return calibrate_step(
      [&](double step) { return ScalarQuantizer::almost_regular(pat, step, offset, s.coverage_lo(), s.coverage_hi()); },
      s, r, target, high_resolution_step(r, target) / mean_len);
}

}  // namespace ecq
