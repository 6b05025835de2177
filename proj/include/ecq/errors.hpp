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

#include <stdexcept>
#include <string>

namespace ecq {

// Bad arguments: dimension mismatch, non-positive parameters, malformed names.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure (bisection, tail enumeration, quadrature) did not
// reach its tolerance.
class NonconvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The operation is not defined for this input (e.g. quadrature entropy of a
// non-product multi-dimensional source).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace ecq
