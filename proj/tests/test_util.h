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


// Small fixtures shared by the unit tests.

#ifndef PROBING_TESTS_TEST_UTIL_H_
#define PROBING_TESTS_TEST_UTIL_H_

#include <vector>

#include "probing/matroid.h"
#include "probing/oracles.h"

namespace probing::testing {

// Elements {a=0, b=1} both adjacent to the single vertex 0.
inline Matroid StarTwoOne() {
  return Matroid::Transversal(2, 1, {{0, 0}, {1, 0}});
}

// Frequency of `hits` in `trials` lies within the 99% Hoeffding interval
// around `expected`.
inline bool WithinCi(long hits, long trials, double expected,
                     double widen = 1.0) {
  const double freq = static_cast<double>(hits) / static_cast<double>(trials);
  return std::abs(freq - expected) <= widen * HoeffdingHalfWidth(trials);
}

}  // namespace probing::testing

#endif  // PROBING_TESTS_TEST_UTIL_H_
