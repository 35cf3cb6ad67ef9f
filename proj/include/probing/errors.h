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

#ifndef PROBING_ERRORS_H_
#define PROBING_ERRORS_H_

#include <stdexcept>
#include <string>

namespace probing {

// Base class for recoverable errors raised by the library.
class ProbingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside its mathematical domain (probability > 1,
// element outside the ground set, negative coordinate, ...).
class InputDomainError : public ProbingError {
 public:
  using ProbingError::ProbingError;
};

// The request exceeds what the implementation supports (size caps,
// non-transversal matroid where a bipartite representation is needed).
class CapabilityError : public ProbingError {
 public:
  using ProbingError::ProbingError;
};

// A point lies outside the polytope it is required to be in.
class InfeasibilityError : public ProbingError {
 public:
  using ProbingError::ProbingError;
};

// Two inputs that must agree do not (decomposition marginals vs. point).
class ConsistencyError : public ProbingError {
 public:
  using ProbingError::ProbingError;
};

// Invalid algorithm configuration.
class ConfigError : public ProbingError {
 public:
  using ProbingError::ProbingError;
};

// Broken internal invariant. Never caught by library code.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace probing

#endif  // PROBING_ERRORS_H_
