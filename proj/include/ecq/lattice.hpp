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
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ecq/errors.hpp"
#include "ecq/numerics.hpp"
#include "ecq/rng.hpp"

namespace ecq {

enum class LatticeFamily { kZn, kDn, kDnDual, kAn, kE8 };

struct DecodeResult {
  std::vector<double> point;
  bool projected = false;  // An input was moved onto the sum-zero hyperplane
};

struct VoronoiMomentEstimate {
  double ell = 0.0;
  double per_dim_G = 0.0;
  double std_error = 0.0;  // of ell
  std::size_t n_samples = 0;
  double r = 2.0;
  std::uint64_t seed = 0;
};

namespace detail {

inline double squared_distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = x[i] - y[i];
    s += t * t;
  }
  return s;
}

// std::round rounds half away from zero.
inline void decode_zn(std::span<const double> x, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::round(x[i]);
}

// Round every coordinate; if the sum is odd, move the worst-rounded
// coordinate (lowest index on ties) to its other neighbouring integer.
inline void decode_dn(std::span<const double> x, std::span<double> out) {
  long long sum = 0;
  std::size_t worst = 0;
  double worst_err = -1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::round(x[i]);
    sum += static_cast<long long>(out[i]);
    const double err = std::abs(x[i] - out[i]);
    if (err > worst_err) {
      worst_err = err;
      worst = i;
    }
  }
  if (sum % 2 != 0) out[worst] += (x[worst] >= out[worst]) ? 1.0 : -1.0;
}

// Decode in the coset shift·1 + base, writing the result to `out`.
template <class Base>
void decode_shifted(std::span<const double> x, std::span<double> out, double shift, Base base,
                    std::vector<double>& scratch) {
  scratch.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) scratch[i] = x[i] - shift;
  base(std::span<const double>(scratch), out);
  for (double& v : out) v += shift;
}

// Union of base and base + ½·1; the integer coset wins ties.
template <class Base>
void decode_two_cosets(std::span<const double> x, std::span<double> out, Base base) {
  thread_local std::vector<double> half_point, scratch;
  half_point.resize(x.size());
  base(x, out);
  decode_shifted(x, std::span<double>(half_point), 0.5, base, scratch);
  if (squared_distance(x, half_point) < squared_distance(x, out))
    std::copy(half_point.begin(), half_point.end(), out.begin());
}

// x must already lie on the sum-zero hyperplane of R^{n+1}.
inline void decode_an(std::span<const double> x, std::span<double> out) {
  long long deficiency = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::round(x[i]);
    deficiency += static_cast<long long>(out[i]);
  }
  if (deficiency == 0) return;
  thread_local std::vector<std::size_t> order;
  order.resize(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return (x[a] - out[a]) < (x[b] - out[b]);
  });
  if (deficiency > 0) {
    for (long long k = 0; k < deficiency; ++k) out[order[static_cast<std::size_t>(k)]] -= 1.0;
  } else {
    for (long long k = 0; k < -deficiency; ++k) out[order[x.size() - 1 - static_cast<std::size_t>(k)]] += 1.0;
  }
}

}  // namespace detail

class Lattice {
 public:
  Lattice(LatticeFamily family, std::size_t dimension, double scale = 1.0)
      : family_(family), dim_(dimension), scale_(scale) {
    require(scale > 0.0 && std::isfinite(scale), "lattice scale must be positive");
    require(dimension >= 1, "lattice dimension must be positive");
    if (family == LatticeFamily::kE8) require(dimension == 8, "E8 has dimension 8");
    if (family == LatticeFamily::kDn || family == LatticeFamily::kDnDual)
      require(dimension >= 2, "D and D* lattices need dimension >= 2");
    build_generator();
  }

  static Lattice E8(double scale = 1.0) { return Lattice(LatticeFamily::kE8, 8, scale); }

  LatticeFamily family() const { return family_; }
  std::size_t dimension() const { return dim_; }
  std::size_t ambient_dimension() const { return family_ == LatticeFamily::kAn ? dim_ + 1 : dim_; }
  double scale() const { return scale_; }
  Lattice scaled(double scale) const { return Lattice(family_, dim_, scale); }

  // Rows are basis vectors in ambient coordinates, already multiplied by scale.
  const Eigen::MatrixXd& generator() const { return generator_; }

  // Intrinsic d-dimensional volume of a fundamental cell.
  double volume() const {
    return std::sqrt((generator_ * generator_.transpose()).determinant());
  }

  std::string name() const {
    switch (family_) {
      case LatticeFamily::kZn: return "Z:" + std::to_string(dim_);
      case LatticeFamily::kDn: return "D:" + std::to_string(dim_);
      case LatticeFamily::kDnDual: return "Dstar:" + std::to_string(dim_);
      case LatticeFamily::kAn: return "A:" + std::to_string(dim_);
      case LatticeFamily::kE8: return "E8";
    }
    return {};
  }

  // Covering radius of the unit-scale lattice (largest distance from any
  // point of space to the lattice), times scale.
  double covering_radius() const {
    const double n = static_cast<double>(dim_);
    double rho = 0.0;
    switch (family_) {
      case LatticeFamily::kZn: rho = std::sqrt(n) / 2.0; break;
      case LatticeFamily::kDn: rho = dim_ <= 3 ? 1.0 : std::sqrt(n) / 2.0; break;
      case LatticeFamily::kDnDual: rho = std::sqrt(n) / 2.0; break;  // upper bound via Z^n
      case LatticeFamily::kAn: {
        const double a = std::floor((n + 1.0) / 2.0);
        rho = std::sqrt(a * (n + 1.0 - a) / (n + 1.0));
        break;
      }
      case LatticeFamily::kE8: rho = 1.0; break;
    }
    return rho * scale_;
  }

  // Nearest lattice point to x (ambient coordinates), Euclidean distance.
  // Ties go to the rounding-half-away-from-zero candidate; for Dn the
  // parity fix moves the lowest-indexed worst coordinate.
  void nearest_point(std::span<const double> x, std::span<double> out) const {
    require(x.size() == ambient_dimension() && out.size() == ambient_dimension(),
            "nearest_point: dimension mismatch");
    thread_local std::vector<double> work;
    work.assign(x.begin(), x.end());
    for (double& v : work) v /= scale_;
    if (family_ == LatticeFamily::kAn) project_sum_zero(work);
    decode_unit(work, out);
    for (double& v : out) v *= scale_;
  }

  std::vector<double> nearest_point(std::span<const double> x) const {
    std::vector<double> out(ambient_dimension());
    nearest_point(x, out);
    return out;
  }

  DecodeResult decode(std::span<const double> x) const {
    DecodeResult res;
    if (family_ == LatticeFamily::kAn) {
      require(x.size() == ambient_dimension(), "decode: dimension mismatch");
      double sum = 0.0, mag = 1.0;
      for (double v : x) {
        sum += v;
        mag += std::abs(v);
      }
      res.projected = std::abs(sum) > 1e-12 * mag;
    }
    res.point = nearest_point(x);
    return res;
  }

  // Integer coordinates of a lattice point in the generator basis.
  std::vector<long long> label(std::span<const double> point) const {
    require(point.size() == ambient_dimension(), "label: dimension mismatch");
    Eigen::RowVectorXd p(dim_);
    for (std::size_t i = 0; i < dim_; ++i) p[static_cast<Eigen::Index>(i)] = point[i];
    const Eigen::RowVectorXd coeffs = p * square_inverse_;
    std::vector<long long> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      out[i] = std::llround(coeffs[static_cast<Eigen::Index>(i)]);
    return out;
  }

  // Membership test up to `tol` in unit-scale coordinates.
  bool contains(std::span<const double> point, double tol = 1e-9) const {
    if (point.size() != ambient_dimension()) return false;
    std::vector<double> u(point.begin(), point.end());
    for (double& v : u) v /= scale_;
    auto is_int = [&](double v) { return std::abs(v - std::round(v)) <= tol; };
    auto all_shift = [&](double shift) {
      return std::all_of(u.begin(), u.end(), [&](double v) { return is_int(v - shift); });
    };
    auto sum_shift = [&](double shift) {
      long long s = 0;
      for (double v : u) s += std::llround(v - shift);
      return s;
    };
    switch (family_) {
      case LatticeFamily::kZn: return all_shift(0.0);
      case LatticeFamily::kDn: return all_shift(0.0) && sum_shift(0.0) % 2 == 0;
      case LatticeFamily::kDnDual: return all_shift(0.0) || all_shift(0.5);
      case LatticeFamily::kAn: return all_shift(0.0) && sum_shift(0.0) == 0;
      case LatticeFamily::kE8:
        return (all_shift(0.0) && sum_shift(0.0) % 2 == 0) ||
               (all_shift(0.5) && sum_shift(0.5) % 2 == 0);
    }
    return false;
  }

 private:
  static void project_sum_zero(std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    for (double& t : v) t -= mean;
  }

  void decode_unit(std::span<const double> x, std::span<double> out) const {
    switch (family_) {
      case LatticeFamily::kZn: detail::decode_zn(x, out); return;
      case LatticeFamily::kDn: detail::decode_dn(x, out); return;
      case LatticeFamily::kDnDual: detail::decode_two_cosets(x, out, detail::decode_zn); return;
      case LatticeFamily::kAn: detail::decode_an(x, out); return;
      case LatticeFamily::kE8: detail::decode_two_cosets(x, out, detail::decode_dn); return;
    }
  }

  void build_generator() {
    const auto n = static_cast<Eigen::Index>(dim_);
    const auto m = static_cast<Eigen::Index>(ambient_dimension());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, m);
    switch (family_) {
      case LatticeFamily::kZn: g.setIdentity(); break;
      case LatticeFamily::kDn:
        g(0, 0) = -1.0;
        g(0, 1) = -1.0;
        for (Eigen::Index i = 1; i < n; ++i) {
          g(i, i - 1) = 1.0;
          g(i, i) = -1.0;
        }
        break;
      case LatticeFamily::kDnDual:
        for (Eigen::Index i = 0; i + 1 < n; ++i) g(i, i) = 1.0;
        g.row(n - 1).setConstant(0.5);
        break;
      case LatticeFamily::kAn:
        for (Eigen::Index i = 0; i < n; ++i) {
          g(i, i) = -1.0;
          g(i, i + 1) = 1.0;
        }
        break;
      case LatticeFamily::kE8:
        g(0, 0) = 2.0;
        for (Eigen::Index i = 1; i < 7; ++i) {
          g(i, i - 1) = -1.0;
          g(i, i) = 1.0;
        }
        g.row(7).setConstant(0.5);
        break;
    }
    generator_ = g * scale_;
    square_inverse_ = generator_.leftCols(n).inverse();
  }

  LatticeFamily family_;
  std::size_t dim_;
  double scale_;
  Eigen::MatrixXd generator_;
  Eigen::MatrixXd square_inverse_;
};

// Exhaustive search over lattice points whose coordinates lie in the box
// x ± radius. Lattice points are generated from the coset description of each
// family, independently of the fast decoders; used as a test oracle. Among
// equidistant points the one with the largest L1 norm wins, then the
// lexicographically largest.
inline std::vector<double> brute_force_nearest(const Lattice& lat, std::span<const double> x,
                                               double radius = 0.0) {
  const std::size_t m = lat.ambient_dimension();
  require(x.size() == m, "brute_force_nearest: dimension mismatch");
  std::vector<double> u(x.begin(), x.end());
  for (double& v : u) v /= lat.scale();
  if (lat.family() == LatticeFamily::kAn) {
    const double mean = std::accumulate(u.begin(), u.end(), 0.0) / static_cast<double>(m);
    for (double& v : u) v -= mean;
  }
  double box = radius > 0.0 ? radius / lat.scale() : lat.covering_radius() / lat.scale() + 1e-9;

  enum class Constraint { kNone, kEvenSum, kZeroSum };
  struct Coset {
    double shift;
    Constraint constraint;
  };
  std::vector<Coset> cosets;
  switch (lat.family()) {
    case LatticeFamily::kZn: cosets = {{0.0, Constraint::kNone}}; break;
    case LatticeFamily::kDn: cosets = {{0.0, Constraint::kEvenSum}}; break;
    case LatticeFamily::kDnDual: cosets = {{0.0, Constraint::kNone}, {0.5, Constraint::kNone}}; break;
    case LatticeFamily::kAn: cosets = {{0.0, Constraint::kZeroSum}}; break;
    case LatticeFamily::kE8: cosets = {{0.0, Constraint::kEvenSum}, {0.5, Constraint::kEvenSum}}; break;
  }

  std::vector<double> best;
  double best_dist = std::numeric_limits<double>::infinity();
  auto better = [&](const std::vector<double>& cand, double dist) {
    if (best.empty() || dist < best_dist) return true;
    if (dist > best_dist) return false;
    double l1c = 0.0, l1b = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      l1c += std::abs(cand[i]);
      l1b += std::abs(best[i]);
    }
    if (l1c != l1b) return l1c > l1b;
    return std::lexicographical_compare(best.begin(), best.end(), cand.begin(), cand.end());
  };

  for (int attempt = 0; attempt < 2 && best.empty(); ++attempt, box *= 2.0) {
    for (const Coset& coset : cosets) {
      // candidate integer offsets per coordinate, nearest first
      std::vector<std::vector<double>> choices(m);
      for (std::size_t i = 0; i < m; ++i) {
        const double lo = std::ceil(u[i] - coset.shift - box);
        const double hi = std::floor(u[i] - coset.shift + box);
        for (double z = lo; z <= hi; z += 1.0) choices[i].push_back(z + coset.shift);
        std::sort(choices[i].begin(), choices[i].end(), [&](double a, double b) {
          return std::abs(u[i] - a) < std::abs(u[i] - b);
        });
      }
      std::vector<double> cand(m);
      auto recurse = [&](auto&& self, std::size_t i, double partial) -> void {
        if (partial > best_dist) return;
        if (i == m) {
          long long s = 0;
          for (double v : cand) s += std::llround(v - coset.shift);
          if (coset.constraint == Constraint::kEvenSum && s % 2 != 0) return;
          if (coset.constraint == Constraint::kZeroSum) {
            double total = 0.0;
            for (double v : cand) total += v;
            if (total != 0.0) return;
          }
          const double dist = detail::squared_distance(u, cand);
          if (better(cand, dist)) {
            best = cand;
            best_dist = dist;
          }
          return;
        }
        for (double v : choices[i]) {
          cand[i] = v;
          const double t = u[i] - v;
          self(self, i + 1, partial + t * t);
        }
      };
      recurse(recurse, 0, 0.0);
    }
  }
  if (best.empty()) throw NonconvergenceError("brute_force_nearest: no lattice point in search box");
  for (double& v : best) v *= lat.scale();
  return best;
}

// Fills `out` (ambient dimension) with sample `index` of the uniform
// distribution on the Voronoi cell of the origin: a uniform point u of the
// fundamental parallelepiped minus its nearest lattice point.
inline void sample_voronoi_one(const Lattice& lat, const CounterRng& rng, std::uint64_t index,
                               std::span<double> out, std::span<double> scratch) {
  const auto& g = lat.generator();
  const std::size_t m = lat.ambient_dimension();
  std::fill(scratch.begin(), scratch.end(), 0.0);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    const double c = rng.uniform(index, static_cast<std::uint64_t>(i));
    for (std::size_t j = 0; j < m; ++j) scratch[j] += c * g(i, static_cast<Eigen::Index>(j));
  }
  lat.nearest_point(scratch, out);
  for (std::size_t j = 0; j < m; ++j) out[j] = scratch[j] - out[j];
}

// n x ambient_dimension matrix of i.i.d. uniform points on the Voronoi cell.
inline std::vector<std::vector<double>> sample_voronoi_uniform(const Lattice& lat, std::size_t n,
                                                               std::uint64_t seed) {
  require(n >= 1, "sample_voronoi_uniform: n must be at least 1");
  const CounterRng rng(seed);
  std::vector<std::vector<double>> out(n, std::vector<double>(lat.ambient_dimension()));
  std::vector<double> scratch(lat.ambient_dimension());
  for (std::size_t i = 0; i < n; ++i) sample_voronoi_one(lat, rng, i, out[i], scratch);
  return out;
}

// Monte Carlo estimate of ell = E‖Y‖^r / V^{r/d}, Y uniform on the Voronoi cell.
inline VoronoiMomentEstimate normalized_moment_mc(const Lattice& lat, double r, std::size_t n,
                                                  std::uint64_t seed, unsigned workers = 0) {
  require(r > 0.0, "normalized_moment_mc: r must be positive");
  require(n >= 10'000, "normalized_moment_mc: need at least 1e4 samples");
  const CounterRng rng(seed);
  const std::size_t m = lat.ambient_dimension();
  auto blocks = run_blocks<RunningStats>(
      n,
      [&](std::size_t begin, std::size_t end) {
        RunningStats stats;
        std::vector<double> y(m), scratch(m);
        for (std::size_t i = begin; i < end; ++i) {
          sample_voronoi_one(lat, rng, i, y, scratch);
          double norm2 = 0.0;
          for (double v : y) norm2 += v * v;
          stats.add(r == 2.0 ? norm2 : std::pow(norm2, 0.5 * r));
        }
        return stats;
      },
      workers);
  RunningStats total;
  for (const auto& b : blocks) total.merge(b);
  const double d = static_cast<double>(lat.dimension());
  const double norm = std::pow(lat.volume(), -r / d);
  VoronoiMomentEstimate est;
  est.ell = total.mean() * norm;
  est.std_error = total.std_error() * norm;
  est.per_dim_G = est.ell / d;
  est.n_samples = n;
  est.r = r;
  est.seed = seed;
  return est;
}

// Normalized second moment G of the hexagonal lattice A2, 5 / (36 √3).
inline double hexagonal_G() { return 5.0 / (36.0 * std::sqrt(3.0)); }

// Parses "Z:d", "D:d", "Dstar:d", "A:d" or "E8".
inline Lattice parse_lattice(std::string_view spec, double scale = 1.0) {
  if (spec == "E8" || spec == "E8:8") return Lattice::E8(scale);
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw ValidationError("lattice '" + std::string(spec) + "': expected family:d or E8");
  const auto fam = spec.substr(0, colon);
  const auto dim_text = spec.substr(colon + 1);
  std::size_t d = 0;
  for (char c : dim_text) {
    if (c < '0' || c > '9') throw ValidationError("lattice dimension must be a positive integer");
    d = d * 10 + static_cast<std::size_t>(c - '0');
    if (d > 4096) throw ValidationError("lattice dimension too large");
  }
  if (dim_text.empty() || d == 0) throw ValidationError("lattice dimension must be a positive integer");
  if (fam == "Z") return Lattice(LatticeFamily::kZn, d, scale);
  if (fam == "D") return Lattice(LatticeFamily::kDn, d, scale);
  if (fam == "Dstar") return Lattice(LatticeFamily::kDnDual, d, scale);
  if (fam == "A") return Lattice(LatticeFamily::kAn, d, scale);
  throw ValidationError("unknown lattice family '" + std::string(fam) + "'");
}

}  // namespace ecq
