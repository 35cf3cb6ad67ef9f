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
#include "probing/matroid.h"
#include "probing/random.h"
#include "test_util.h"

namespace probing {
namespace {

using testing::StarTwoOne;

// Brute-force rank from the independence oracle.
int BruteRank(const Matroid& m, ElementSet s) {
  int best = 0;
  for (uint64_t sub = s.bits();; sub = (sub - 1) & s.bits()) {
    if (m.IsIndependent(ElementSet(sub))) {
      best = std::max(best, ElementSet(sub).Size());
    }
    if (sub == 0) break;
  }
  return best;
}

std::vector<double> RandomPointIn(const Matroid& m, RandomSource& rng) {
  // Random convex combination of independent sets.
  const auto sets = m.IndependentSets();
  std::vector<double> y(m.ground_size(), 0.0);
  double total = 0.0;
  std::vector<double> w(sets.size());
  for (double& v : w) {
    v = rng.Uniform() < 0.3 ? rng.Uniform() : 0.0;
    total += v;
  }
  if (total == 0.0) return y;
  for (size_t i = 0; i < sets.size(); ++i) {
    for (int e : sets[i]) y[e] += w[i] / total;
  }
  return y;
}

TEST_SUITE("matroid") {
  TEST_CASE("independence on the 2x1 star") {
    const Matroid m = StarTwoOne();
    CHECK(m.IsIndependent(ElementSet()));
    CHECK(m.IsIndependent(ElementSet::Of({0})));
    CHECK(m.IsIndependent(ElementSet::Of({1})));
    CHECK_FALSE(m.IsIndependent(ElementSet::Of({0, 1})));
    CHECK(m.Rank(ElementSet()) == 0);
    CHECK(m.Rank(ElementSet::Of({0, 1})) == 1);
    CHECK_THROWS_AS(m.IsIndependent(ElementSet::Of({2})), InputDomainError);
  }

  TEST_CASE("uniform rank two over three elements") {
    const Matroid m = Matroid::Uniform(3, 2);
    CHECK(m.IsIndependent(ElementSet::Of({0, 1})));
    CHECK(m.IsIndependent(ElementSet::Of({0, 2})));
    CHECK(m.IsIndependent(ElementSet::Of({1, 2})));
    CHECK_FALSE(m.IsIndependent(ElementSet::Full(3)));
    CHECK(m.Rank(ElementSet::Full(3)) == 2);
  }

  TEST_CASE("uniform over a subset leaves other elements free") {
    const Matroid m = Matroid::Uniform(4, 1, ElementSet::Of({0, 1}));
    CHECK(m.IsIndependent(ElementSet::Of({0, 2, 3})));
    CHECK_FALSE(m.IsIndependent(ElementSet::Of({0, 1})));
    CHECK(m.Rank(ElementSet::Full(4)) == 3);
  }

  TEST_CASE("partition matroid") {
    const Matroid m = Matroid::Partition(
        5, {{ElementSet::Of({0, 1, 2}), 2}, {ElementSet::Of({3}), 0}});
    CHECK(m.IsIndependent(ElementSet::Of({0, 1, 4})));
    CHECK_FALSE(m.IsIndependent(ElementSet::Of({0, 1, 2})));
    CHECK_FALSE(m.IsIndependent(ElementSet::Of({3})));
    CHECK(m.Rank(ElementSet::Full(5)) == 3);
    CHECK_THROWS_AS(Matroid::Partition(3, {{ElementSet::Of({0, 1}), 1},
                                           {ElementSet::Of({1, 2}), 1}}),
                    InputDomainError);
  }

  TEST_CASE("enumerated matroids are validated") {
    // Graphic matroid of a triangle: all sets but the full one.
    std::vector<ElementSet> family;
    for (uint64_t mask = 0; mask < 7; ++mask) family.emplace_back(mask);
    const Matroid m = Matroid::Enumerated(3, family);
    CHECK(m.Rank(ElementSet::Full(3)) == 2);
    CHECK_FALSE(m.IsIndependent(ElementSet::Full(3)));
    // Missing the empty set.
    CHECK_THROWS_AS(Matroid::Enumerated(2, {ElementSet::Of({0})}),
                    InputDomainError);
    // Not downward closed.
    CHECK_THROWS_AS(Matroid::Enumerated(2, {ElementSet(), ElementSet::Of({0, 1})}),
                    InputDomainError);
    // Exchange fails: {0,1} and {2} with nothing to extend {2}.
    CHECK_THROWS_AS(
        Matroid::Enumerated(3, {ElementSet(), ElementSet::Of({0}),
                                ElementSet::Of({1}), ElementSet::Of({2}),
                                ElementSet::Of({0, 1})}),
        InputDomainError);
    CHECK_THROWS_AS(m.TransversalGraph(), CapabilityError);
  }

  TEST_CASE("enumerated oracle agrees with its family and brute-force rank") {
    RandomSource rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      // Truncations of random partition matroids are matroids.
      const int n = 3 + rng.UniformInt(6);
      std::vector<PartitionBlock> blocks(2);
      for (int e = 0; e < n; ++e) blocks[rng.UniformInt(2)].elements.Insert(e);
      blocks[0].capacity = 1 + rng.UniformInt(2);
      blocks[1].capacity = 1 + rng.UniformInt(2);
      const Matroid base = Matroid::Partition(n, blocks);
      const int cap = 1 + rng.UniformInt(3);
      std::vector<ElementSet> family;
      for (ElementSet s : base.IndependentSets()) {
        if (s.Size() <= cap) family.push_back(s);
      }
      const Matroid m = Matroid::Enumerated(n, family);
      for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        const ElementSet s(mask);
        const bool listed =
            std::find(family.begin(), family.end(), s) != family.end();
        CHECK(m.IsIndependent(s) == listed);
        CHECK(m.Rank(s) == BruteRank(m, s));
      }
    }
  }

  TEST_CASE("independence is downward closed") {
    RandomSource rng(12);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 6;
      std::vector<std::pair<int, int>> edges;
      for (int e = 0; e < n; ++e) {
        for (int v = 0; v < 3; ++v) {
          if (rng.Bernoulli(0.4)) edges.emplace_back(e, v);
        }
      }
      const Matroid m = Matroid::Transversal(n, 3, edges);
      for (ElementSet s : m.IndependentSets()) {
        for (int e : s) CHECK(m.IsIndependent(s.Without(e)));
      }
    }
  }

  TEST_CASE("polytope membership") {
    const Matroid m = Matroid::Uniform(2, 1);
    CHECK(m.InPolytope(std::vector<double>{0.0, 0.0}));
    CHECK(m.InPolytope(std::vector<double>{0.5, 0.5}));
    ElementSet violated;
    CHECK_FALSE(m.InPolytope(std::vector<double>{0.6, 0.6}, 1e-9, &violated));
    CHECK(violated == ElementSet::Full(2));
    CHECK_THROWS_AS(m.InPolytope(std::vector<double>{-0.1, 0.0}),
                    InputDomainError);
  }

  TEST_CASE("decomposition of an independent set's indicator") {
    const Matroid m = Matroid::Uniform(3, 2);
    const std::vector<double> y = {1.0, 0.0, 1.0};
    const ConvexDecomposition d = Decompose(m, y);
    REQUIRE(d.terms.size() == 1);
    CHECK(d.terms[0].weight == doctest::Approx(1.0));
    CHECK(d.terms[0].set == ElementSet::Of({0, 2}));
  }

  TEST_CASE("decomposition of the symmetric rank-one point") {
    const Matroid m = Matroid::Uniform(2, 1);
    const std::vector<double> y = {0.5, 0.5};
    const ConvexDecomposition d = Decompose(m, y);
    REQUIRE(d.terms.size() == 2);
    for (const auto& t : d.terms) {
      CHECK(t.weight == doctest::Approx(0.5));
      CHECK(t.set.Size() == 1);
    }
    CHECK(d.terms[0].set != d.terms[1].set);
  }

  TEST_CASE("decompositions re-sum to the point") {
    RandomSource rng(13);
    std::vector<Matroid> ms = {
        StarTwoOne(),
        Matroid::Uniform(5, 2),
        Matroid::Partition(6, {{ElementSet::Of({0, 1, 2}), 2},
                               {ElementSet::Of({3, 4}), 1}}),
        Matroid::Transversal(5, 3, {{0, 0}, {0, 1}, {1, 1}, {2, 1}, {2, 2},
                                    {3, 2}, {4, 0}, {4, 2}}),
    };
    for (const Matroid& m : ms) {
      for (int trial = 0; trial < 100; ++trial) {
        const auto y = RandomPointIn(m, rng);
        const ConvexDecomposition d = Decompose(m, y);
        CHECK(IsValidDecomposition(m, d, y, 1e-9));
      }
    }
  }

  TEST_CASE("decomposing a point outside the polytope names the constraint") {
    const Matroid m = Matroid::Transversal(3, 2, {{0, 0}, {1, 0}, {2, 1}});
    const std::vector<double> y = {0.7, 0.7, 0.2};
    try {
      Decompose(m, y);
      FAIL("expected an infeasibility error");
    } catch (const InfeasibilityError& err) {
      CHECK(std::string(err.what()).find("{0,1}") != std::string::npos);
    }
  }
}

}  // namespace
}  // namespace probing
