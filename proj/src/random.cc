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

#include "probing/random.h"

#include "probing/errors.h"

namespace probing {

RandomSource::RandomSource(uint64_t seed, uint64_t stream)
    : seed_(seed), stream_(stream) {
  // Two rounds so that neighbouring (seed, stream) pairs land far apart.
  key_ = Mix(Mix(seed ^ 0x6a09e667f3bcc909ULL) + stream * kGolden +
             0x3c6ef372fe94f82bULL);
}

RandomSource RandomSource::Split(uint64_t child) const {
  return RandomSource(Mix(key_ ^ 0xa54ff53a5f1d36f1ULL), child);
}

int RandomSource::UniformInt(int n) {
  if (n <= 0) throw InputDomainError("UniformInt: n must be positive");
  // Lemire's nearly-divisionless method.
  const uint64_t range = static_cast<uint64_t>(n);
  __uint128_t m = static_cast<__uint128_t>(NextU64()) * range;
  uint64_t low = static_cast<uint64_t>(m);
  if (low < range) {
    const uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      m = static_cast<__uint128_t>(NextU64()) * range;
      low = static_cast<uint64_t>(m);
    }
  }
  return static_cast<int>(m >> 64);
}

}  // namespace probing
