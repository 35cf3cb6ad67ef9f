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


// Monte Carlo and exact verification pipelines. Each check appends rows to
// a Report; the acceptance binary and the command line tool share them.

#ifndef PROBING_EXPERIMENTS_H_
#define PROBING_EXPERIMENTS_H_

#include <span>
#include <vector>

#include "probing/greedy.h"
#include "probing/instance.h"
#include "probing/kset.h"
#include "probing/matching.h"
#include "probing/matroid.h"
#include "probing/oracles.h"
#include "probing/polytope.h"
#include "probing/random.h"

namespace probing {

// scale * (a random convex combination of `vertices` LP vertices of P).
std::vector<double> RandomPointInP(const ProbingPolytope& polytope,
                                   int vertices, double scale,
                                   RandomSource& rng);

// Pr[e in output | e in act(R(x))] >= 1 / (1 + b (k_in + k_out)) for every
// e in supp(x), `runs` conditional samples each.
void CheckSchemeBalance(const ProbingInstance& instance,
                        std::span<const double> x, double b, long runs,
                        RandomSource& rng, Report* report);

// Fixed critical sets and A = supp(x): success frequency of every element
// against the closed form.
void CheckConditionalLaw(const ProbingInstance& instance,
                         std::span<const double> x, double b, long runs,
                         RandomSource& rng, Report* report);

// E[sum over the blocking set of e in matroid j of p_f X_f (inner) or
// X_f (outer)] <= b for every matroid and element.
void CheckBlockingSets(const ProbingInstance& instance,
                       std::span<const double> x, double b, long samples,
                       RandomSource& rng, Report* report);

// Runs with every invariant check on; one row counting violations.
void CheckMappingProperties(const ProbingInstance& instance,
                            std::span<const double> x, double b, long runs,
                            RandomSource& rng, Report* report);

// F(y(b)) >= (b e^{-b} - 0.02) max_P f+, the per-step gain bound with
// slack 0.05 delta max f+, the coordinate caps and y / p in b P.
GreedyResult CheckMeasuredGreedy(const ProbingInstance& instance,
                                 const GreedyConfig& config, RandomSource& rng,
                                 Report* report);

// f+(x_OPT p) >= E[f(OPT)] with the brute-force policy.
void CheckRelaxation(const ProbingInstance& instance, Report* report);

struct EndToEndResult {
  double opt = 0.0;     // E[f(OPT)]
  double mean = 0.0;    // E[f(S^prun)] estimate
  double ci = 0.0;
  double bound = 0.0;   // c (b e^{-b} - 0.02) opt
  double ratio() const { return opt > 0 ? mean / opt : 1.0; }
};
// Greedy, scheme with pruning, then E[f(S^prun)] against the brute-force
// optimum.
EndToEndResult CheckEndToEnd(const ProbingInstance& instance,
                             const GreedyConfig& config, long runs,
                             RandomSource& rng, Report* report);

// Chi-square equality of the laws of S^prun + S^virt and the plain output.
void CheckPruningLaw(const ProbingInstance& instance,
                     std::span<const double> x, double b, long runs,
                     RandomSource& rng, Report* report);

// Pr[e probed] >= x_e / (k + 1) per column at the LP optimum, capacities
// never exceeded, and the expected value against LP / (k + 1).
void CheckKSet(const KSetInstance& instance, long runs, RandomSource& rng,
               Report* report);

// Rounding properties and the scan algorithm's guarantees at the LP
// optimum. Sampling continues past `runs` (up to 20 times as many) until
// every edge with x_e > 0 was rounded up `min_conditional` times.
void CheckMatching(const MatchingInstance& instance, long runs,
                   RandomSource& rng, Report* report,
                   long min_conditional = 0);

// Balance of random-order greedy outer and inner schemes combined, against
// the product of their exact balances.
void CheckCombined(const Matroid& outer, const Matroid& inner,
                   std::span<const double> x, std::span<const double> p,
                   long runs, RandomSource& rng, Report* report);

}  // namespace probing

#endif  // PROBING_EXPERIMENTS_H_
