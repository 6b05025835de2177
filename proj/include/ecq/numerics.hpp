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
#include <functional>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ecq {

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

namespace detail {

// Recursive bisection on single Gauss-Kronrod (7/15) panels until each panel
// meets max(abs_tol * width / total, rel_tol * |value|).
template <class F>
void integrate_panel(F& f, double a, double b, double abs_per_unit, double rel_tol, unsigned depth,
                     Integral& out) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err);
  if (depth == 0 || err <= std::max(abs_per_unit * (b - a), rel_tol * std::abs(v))) {
    out.value += v;
    out.error += err;
    return;
  }
  const double mid = 0.5 * (a + b);
  integrate_panel(f, a, mid, abs_per_unit, rel_tol, depth - 1, out);
  integrate_panel(f, mid, b, abs_per_unit, rel_tol, depth - 1, out);
}

}  // namespace detail

// Adaptive Gauss-Kronrod quadrature on a finite interval. `breaks` are interior
// points where the integrand has a kink or jump; the interval is split there.
template <class F>
Integral integrate(F&& f, double a, double b, std::vector<double> breaks = {},
                   double rel_tol = 1e-12, double abs_tol = 1e-15, unsigned max_depth = 30) {
  Integral out;
  if (!(b > a)) return out;
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  const double abs_per_unit = abs_tol / (b - a);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = std::max(a, breaks[i]);
    const double hi = std::min(b, breaks[i + 1]);
    if (!(hi > lo)) continue;
    detail::integrate_panel(f, lo, hi, abs_per_unit, rel_tol, max_depth, out);
  }
  return out;
}

// Compensated (Neumaier) summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Streaming mean/variance (Welford), mergeable with Chan's update.
class RunningStats {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }

  void merge(const RunningStats& other) {
    if (other.n_ == 0) return;
    if (n_ == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double delta = other.mean_ - mean_;
    const double total = na + nb;
    mean_ += delta * nb / total;
    m2_ += other.m2_ + delta * delta * na * nb / total;
    n_ += other.n_;
  }

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double std_error() const {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Fixed block size for Monte Carlo sharding. Results depend only on the block
// decomposition, never on how many threads process the blocks.
inline constexpr std::size_t kMcBlock = 1u << 14;

// Runs `body(begin, end) -> T` over [0, n) in blocks of kMcBlock and returns
// the per-block results in block order.
template <class T>
std::vector<T> run_blocks(std::size_t n, const std::function<T(std::size_t, std::size_t)>& body,
                          unsigned workers = 0) {
  const std::size_t blocks = (n + kMcBlock - 1) / kMcBlock;
  std::vector<T> results(blocks);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, blocks));
  auto work = [&](unsigned w) {
    for (std::size_t b = w; b < blocks; b += workers)
      results[b] = body(b * kMcBlock, std::min(n, (b + 1) * kMcBlock));
  };
  if (workers <= 1) {
    work(0);
    return results;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  pool.clear();
  return results;
}

}  // namespace ecq
