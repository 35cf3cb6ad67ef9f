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

#ifndef PROBING_RANDOM_H_
#define PROBING_RANDOM_H_

#include <cstdint>
#include <limits>

namespace probing {

// Counter-based random source. The i-th output of stream (seed, stream) is
// a fixed function of (seed, stream, i), so replications can be assigned
// their own stream and evaluated in any order with identical results.
//
// Satisfies UniformRandomBitGenerator for use with <random> and <algorithm>.
class RandomSource {
 public:
  using result_type = uint64_t;

  explicit RandomSource(uint64_t seed, uint64_t stream = 0);

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

  // A source for sub-stream `child` of this stream. Independent of the
  // parent's position.
  RandomSource Split(uint64_t child) const;

  uint64_t NextU64() { return Mix(key_ + counter_++ * kGolden); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

  // True with probability p; p <= 0 is always false and p >= 1 always true.
  bool Bernoulli(double p) { return Uniform() < p; }

  // Uniform integer in [0, n); n must be positive.
  int UniformInt(int n);

  result_type operator()() { return NextU64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<uint64_t>::max();
  }

 private:
  static constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  static constexpr uint64_t Mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t seed_;
  uint64_t stream_;
  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace probing

#endif  // PROBING_RANDOM_H_
