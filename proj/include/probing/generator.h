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


// Seeded random instances for experiments and tests.

#ifndef PROBING_GENERATOR_H_
#define PROBING_GENERATOR_H_

#include <string>

#include "probing/instance.h"
#include "probing/kset.h"
#include "probing/matching.h"
#include "probing/random.h"

namespace probing {

struct GeneratorSpec {
  int n = 6;
  int k_in = 1;
  int k_out = 1;
  // transversal, uniform, partition or mixed (cycles through the three).
  std::string shape = "transversal";
  // Vertices per transversal matroid; -1 picks a random count in
  // [max(1, n/3), n].
  int vertices = -1;
  // linear, coverage, cut, or nonmonotone (coverage plus a directed cut,
  // stored as a value table).
  std::string objective = "coverage";
  double p_min = 0.2;
  double p_max = 1.0;
};

// Parses "n=6,k_in=1,k_out=2,shape=mixed,objective=cut,p=0.3:0.9".
// Throws ConfigError on unknown keys or malformed values.
GeneratorSpec ParseGeneratorSpec(const std::string& text);

// Throws ConfigError when the spec cannot produce a usable instance, for
// example when every matroid would have rank 0.
ProbingInstance GenerateInstance(const GeneratorSpec& spec, RandomSource& rng);

// Columns over `k` random coordinates each with 2-4 outcomes whose values
// are not monotone in the size vector; capacities in {1, 2}.
KSetInstance GenerateKSet(int n, int d, int k, RandomSource& rng);

// Random bipartite graph with edge density `density`, p in [0.2, 1],
// weights in [0.5, 2] and patience in {1, 2, 3}.
MatchingInstance GenerateMatching(int left, int right, double density,
                                  RandomSource& rng);

}  // namespace probing

#endif  // PROBING_GENERATOR_H_
