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


#include <doctest.h>

#include "probing/errors.h"
#include "probing/generator.h"
#include "probing/kset.h"
#include "probing/oracles.h"
#include "probing/random.h"
#include "probing/stoch_cr.h"
#include "test_util.h"

namespace probing {
namespace {

using testing::WithinCi;

// Column over `coords` whose size is always all of them.
KSetColumn Deterministic(ElementSet coords, double value) {
  return KSetColumn{coords, {{1.0, value, coords}}};
}

TEST_SUITE("kset") {
  TEST_CASE("instance validation") {
    CHECK_THROWS_AS(KSetInstance({1}, {KSetColumn{ElementSet::Of({0}),
                                                  {{1.0, 1.0, ElementSet::Of({1})}}}}),
                    InputDomainError);
    CHECK_THROWS_AS(KSetInstance({1}, {KSetColumn{ElementSet::Of({0}),
                                                  {{0.5, 1.0, ElementSet::Of({0})}}}}),
                    InputDomainError);
    CHECK_THROWS_AS(KSetInstance({-1}, {}), InputDomainError);
    const KSetInstance ok({2, 1}, {KSetColumn{ElementSet::Of({0, 1}),
                                              {{0.25, 4.0, ElementSet::Of({0})},
                                               {0.75, 0.0, ElementSet::Of({0, 1})}}}});
    CHECK(ok.k() == 2);
    CHECK(ok.ExpectedValue(0) == doctest::Approx(1.0));
    CHECK(ok.ExpectedSize(0, 0) == doctest::Approx(1.0));
    CHECK(ok.ExpectedSize(0, 1) == doctest::Approx(0.75));
  }

  TEST_CASE("a column that fits alone is taken fully") {
    const KSetInstance inst({1, 1}, {Deterministic(ElementSet::Of({0, 1}), 2.0)});
    double value = 0.0;
    const auto x = SolveKSetLp(inst, &value);
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(value == doctest::Approx(2.0));
  }

  TEST_CASE("two identical columns share a unit capacity") {
    const KSetInstance inst({1}, {Deterministic(ElementSet::Of({0}), 1.0),
                                  Deterministic(ElementSet::Of({0}), 1.0)});
    const auto x = SolveKSetLp(inst);
    CHECK(x[0] + x[1] == doctest::Approx(1.0));
  }

  TEST_CASE("the LP bounds the best adaptive packing") {
    RandomSource rng(81);
    for (int trial = 0; trial < 10; ++trial) {
      const KSetInstance inst = GenerateKSet(5, 3, 2, rng);
      double lp = 0.0;
      SolveKSetLp(inst, &lp);
      CHECK(lp >= KSetBruteForce(inst) - 1e-9);
    }
  }

  TEST_CASE("brute force on a tiny instance") {
    // One unit of capacity; column 0 always fits and is worth 1, column 1 is
    // worth 3 with probability 0.5 and uses the capacity only then.
    const KSetInstance inst(
        {1}, {Deterministic(ElementSet::Of({0}), 1.0),
              KSetColumn{ElementSet::Of({0}),
                         {{0.5, 3.0, ElementSet::Of({0})},
                          {0.5, 0.0, ElementSet()}}}});
    // Probe column 1 first: 0.5 * 3 + 0.5 * (0 + 1) = 2.
    CHECK(KSetBruteForce(inst) == doctest::Approx(2.0));
  }

  TEST_CASE("a single column with x = 1 is always probed") {
    const KSetInstance inst({1}, {Deterministic(ElementSet::Of({0}), 1.0)});
    const PreparedKSet prepared(inst, {1.0});
    RandomSource rng(82);
    for (int t = 0; t < 50; ++t) CHECK(prepared.Run(rng).probed == ElementSet::Of({0}));
  }

  TEST_CASE("deterministic columns match the scheme on uniform matroids") {
    // Columns over coordinates of a 3-dimensional packing with unit sizes.
    const std::vector<int> capacity = {1, 2, 1};
    const std::vector<ElementSet> coords = {
        ElementSet::Of({0, 1}), ElementSet::Of({1, 2}), ElementSet::Of({0}),
        ElementSet::Of({1}), ElementSet::Of({2, 0})};
    std::vector<KSetColumn> columns;
    for (ElementSet c : coords) columns.push_back(Deterministic(c, 1.0));
    const KSetInstance inst(capacity, columns);
    const auto x = SolveKSetLp(inst);

    std::vector<Matroid> inner;
    for (int j = 0; j < 3; ++j) {
      ElementSet members;
      for (int e = 0; e < 5; ++e) {
        if (coords[e].Contains(j)) members.Insert(e);
      }
      inner.push_back(Matroid::Uniform(5, capacity[j], members));
    }
    const ProbingInstance probing(std::vector<double>(5, 1.0), inner, {},
                                  SubmodularFunction::Linear(std::vector<double>(5, 1.0)));
    const PreparedScheme scheme(probing, x, 1.0);
    const PreparedKSet prepared(inst, x);

    RandomSource rng(83);
    const long trials = 100000;
    std::vector<long> a(5, 0), b(5, 0);
    for (long t = 0; t < trials; ++t) {
      for (int e : prepared.Run(rng).probed) ++a[e];
      for (int e : scheme.Run(SampleROfX(x, rng), rng).output) ++b[e];
    }
    for (int e = 0; e < 5; ++e) {
      CHECK(std::abs(a[e] - b[e]) / static_cast<double>(trials) <=
            2.0 * HoeffdingHalfWidth(trials));
    }
  }

  TEST_CASE("probe probability and capacities on random instances") {
    RandomSource rng(84);
    for (int trial = 0; trial < 3; ++trial) {
      const int k = 2;
      const KSetInstance inst = GenerateKSet(6, 4, k, rng);
      const auto x = SolveKSetLp(inst);
      const PreparedKSet prepared(inst, x);
      const long trials = 30000;
      std::vector<long> hits(6, 0);
      KSetOptions options;
      options.check_invariants = true;
      for (long t = 0; t < trials; ++t) {
        const KSetRun run = prepared.Run(rng, options);
        for (int j = 0; j < inst.dims(); ++j) {
          CHECK(run.load[j] <= inst.capacity()[j]);
        }
        for (int e : run.probed) ++hits[e];
      }
      for (int e = 0; e < 6; ++e) {
        const double est = static_cast<double>(hits[e]) / trials;
        CHECK(est >= x[e] / (k + 1) - 3.0 * HoeffdingHalfWidth(trials));
      }
    }
  }

  TEST_CASE("points violating a capacity are rejected") {
    const KSetInstance inst({1}, {Deterministic(ElementSet::Of({0}), 1.0),
                                  Deterministic(ElementSet::Of({0}), 1.0)});
    CHECK_THROWS_AS(PreparedKSet(inst, {0.8, 0.8}), InfeasibilityError);
  }
}

}  // namespace
}  // namespace probing
