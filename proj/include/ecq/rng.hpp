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

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ecq {

// Counter-based generator: every draw is a pure function of
// (seed, index, lane), so a batch can be split across workers in any way and
// still reproduce bit-identical output. The mixing function is the SplitMix64
// finalizer applied twice with distinct odd constants per coordinate.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  constexpr std::uint64_t bits(std::uint64_t index, std::uint64_t lane) const {
    std::uint64_t z = key_ + index * 0x9e3779b97f4a7c15ULL;
    z = mix(z) ^ (lane * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL);
    return mix(z);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform(std::uint64_t index, std::uint64_t lane) const {
    return static_cast<double>(bits(index, lane) >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1].
  double uniform_open0(std::uint64_t index, std::uint64_t lane) const {
    return 1.0 - uniform(index, lane);
  }

  // Standard normal via the cosine branch of Box-Muller; consumes lanes
  // 2*lane and 2*lane + 1.
  double normal(std::uint64_t index, std::uint64_t lane) const {
    const double u1 = uniform_open0(index, 2 * lane);
    const double u2 = uniform(index, 2 * lane + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Independent child stream, e.g. one per lattice scale or per D point.
  constexpr CounterRng split(std::uint64_t stream) const {
    CounterRng child(0);
    child.key_ = mix(key_ ^ mix(stream + 0xa4093822299f31d0ULL));
    return child;
  }

 private:
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
};

}  // namespace ecq
