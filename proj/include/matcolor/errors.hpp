// Copyright 2026 The Authors.
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

namespace matcolor {

/// An argument references elements or values outside the operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition of an operation was violated by the caller.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An internal invariant failed. Indicates a bug, never bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An operation declined to run because a brute-force budget would be exceeded.
class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest ground set any exhaustive subset enumeration accepts by default.
inline constexpr std::size_t kBruteForceLimit = 24;

inline void require_brute_force_size(std::size_t n, std::size_t limit, const char* what) {
  if (n > limit) {
    throw Refusal(std::string(what) + ": ground set of " + std::to_string(n) +
                  " elements exceeds the brute-force limit of " + std::to_string(limit));
  }
}

}  // namespace matcolor
