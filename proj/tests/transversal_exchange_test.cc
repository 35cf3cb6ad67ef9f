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
#include "probing/matroid.h"
#include "probing/random.h"
#include "probing/transversal_exchange.h"
#include "test_util.h"

namespace probing {
namespace {

using testing::StarTwoOne;
using testing::WithinCi;

ConvexDecomposition Terms(std::vector<DecompositionTerm> terms) {
  return ConvexDecomposition{std::move(terms)};
}

TEST_SUITE("transversal_exchange") {
  TEST_CASE("a single support set maps to itself") {
    const Matroid m = Matroid::Transversal(3, 3, {{0, 0}, {1, 1}, {2, 2}});
    const auto state = BuildInitialState(m, Terms({{1.0, ElementSet::Full(3)}}));
    for (int e = 0; e < 3; ++e) CHECK(MapElement(state, 0, 0, e) == e);
  }

  TEST_CASE("the 2x1 star maps b onto a") {
    const Matroid m = StarTwoOne();
    const auto state = BuildInitialState(
        m, Terms({{0.5, ElementSet::Of({0})}, {0.5, ElementSet::Of({1})}}));
    CHECK(MapElement(state, 1, 0, 1) == 0);
    CHECK(MapElement(state, 0, 1, 0) == 1);
    const TransversalMapping map = MaterializeMapping(state);
    CHECK(map(1, 0, 1) == 0);
    CHECK(map(1, 0, 0) == -2);
  }

  TEST_CASE("disjoint stars map to bottom") {
    const Matroid m = Matroid::Transversal(2, 2, {{0, 0}, {1, 1}});
    const auto state = BuildInitialState(
        m, Terms({{0.5, ElementSet::Of({0})}, {0.5, ElementSet::Of({1})}}));
    CHECK(MapElement(state, 1, 0, 1) == kBottom);
  }

  TEST_CASE("injections follow the lowest-index augmenting paths") {
    // Element 0 may use vertex 0 or 1, element 1 only vertex 0.
    const Matroid m = Matroid::Transversal(2, 2, {{0, 0}, {0, 1}, {1, 0}});
    const auto state = BuildInitialState(m, Terms({{1.0, ElementSet::Full(2)}}));
    CHECK(state.VertexOf(0, 0) == 1);
    CHECK(state.VertexOf(0, 1) == 0);
    CHECK_FALSE(CheckSupport(state, m).has_value());
  }

  TEST_CASE("non-transversal matroids are rejected") {
    const Matroid m = Matroid::Enumerated(1, {ElementSet(), ElementSet::Of({0})});
    CHECK_THROWS_AS(BuildInitialState(m, Terms({{1.0, ElementSet::Of({0})}})),
                    CapabilityError);
  }

  TEST_CASE("critical set of an element in a single set") {
    const Matroid m = StarTwoOne();
    const auto state = BuildInitialState(
        m, Terms({{0.5, ElementSet::Of({0})}, {0.5, ElementSet::Of({1})}}));
    const CriticalSampler sampler(state, std::vector<double>{0.5, 0.5});
    RandomSource rng(51);
    for (int t = 0; t < 100; ++t) {
      const auto c = sampler.Sample(ElementSet::Full(2), rng);
      CHECK(c[0] == 0);
      CHECK(c[1] == 1);
    }
    CHECK(sampler.Probability(0, 0) == doctest::Approx(1.0));
  }

  TEST_CASE("critical set frequencies follow beta / y") {
    const Matroid m = Matroid::Uniform(2, 2);
    const auto state = BuildInitialState(
        m, Terms({{0.25, ElementSet::Of({0, 1})},
                  {0.25, ElementSet::Of({0})},
                  {0.5, ElementSet::Of({1})}}));
    const CriticalSampler sampler(state, std::vector<double>{0.5, 0.75});
    RandomSource rng(52);
    const long trials = 100000;
    long first = 0;
    for (long t = 0; t < trials; ++t) {
      first += sampler.Sample(ElementSet::Of({0}), rng)[0] == 0;
    }
    CHECK(WithinCi(first, trials, 0.5));
    CHECK(sampler.Probability(1, 0) == doctest::Approx(1.0 / 3.0));
    CHECK(sampler.Probability(1, 2) == doctest::Approx(2.0 / 3.0));
  }

  TEST_CASE("scaled points still give a distribution per element") {
    // p x = (0.2, 0.3) decomposed at b = 0.5, i.e. the point (0.4, 0.6).
    const Matroid m = Matroid::Uniform(2, 1);
    const std::vector<double> y = {0.4, 0.6};
    const ConvexDecomposition d = Decompose(m, y);
    const auto state = BuildInitialState(m, d);
    const CriticalSampler sampler(state, y);
    for (int e = 0; e < 2; ++e) {
      double total = 0.0;
      for (int i = 0; i < state.num_sets(); ++i) total += sampler.Probability(e, i);
      CHECK(total == doctest::Approx(1.0));
    }
  }

  TEST_CASE("marginal mismatch is a consistency error") {
    const Matroid m = StarTwoOne();
    const auto state = BuildInitialState(
        m, Terms({{0.5, ElementSet::Of({0})}, {0.5, ElementSet::Of({1})}}));
    CHECK_THROWS_AS(CriticalSampler(state, std::vector<double>{0.4, 0.5}),
                    ConsistencyError);
  }

  TEST_CASE("blocking sets") {
    const Matroid star = StarTwoOne();
    const auto s1 = BuildInitialState(
        star, Terms({{0.5, ElementSet::Of({0})}, {0.5, ElementSet::Of({1})}}));
    const CriticalSets c = {0, 1};
    CHECK(BlockingSet(s1, c, 0) == ElementSet::Of({1}));
    CHECK(BlockingSet(s1, c, 1) == ElementSet::Of({0}));

    const Matroid disjoint = Matroid::Transversal(2, 2, {{0, 0}, {1, 1}});
    const auto s2 = BuildInitialState(
        disjoint, Terms({{0.5, ElementSet::Of({0})}, {0.5, ElementSet::Of({1})}}));
    CHECK(BlockingSet(s2, c, 0).Empty());
    CHECK(BlockingSet(s2, c, 1).Empty());

    // An element without a critical set never blocks anyone.
    const CriticalSets partial = {0, -1};
    CHECK(BlockingSet(s1, partial, 0).Empty());
    CHECK(BlockingSet(s1, partial, 1).Empty());
  }

  TEST_CASE("updates without a conflict leave sets unchanged") {
    const Matroid m = Matroid::Transversal(3, 2, {{0, 0}, {1, 1}, {2, 1}});
    auto state = BuildInitialState(
        m, Terms({{0.5, ElementSet::Of({0, 1})}, {0.5, ElementSet::Of({2})}}));
    const CriticalSets c = {0, 0, 1};
    // Element 0's vertex 0 is unused by set 1.
    const ElementSet blocked = UpdateState(state, c, 0, /*insert=*/false);
    CHECK(blocked.Empty());
    CHECK(state.set(0) == ElementSet::Of({0, 1}));
    CHECK(state.set(1) == ElementSet::Of({2}));
  }

  TEST_CASE("a set already holding the chosen element at its vertex is kept") {
    const Matroid m = Matroid::Transversal(2, 2, {{0, 0}, {1, 1}});
    auto state = BuildInitialState(
        m, Terms({{0.5, ElementSet::Full(2)}, {0.5, ElementSet::Of({0})}}));
    const CriticalSets c = {1, 0};
    std::vector<int> changed;
    UpdateState(state, c, 0, /*insert=*/true, &changed);
    CHECK(state.set(0) == ElementSet::Full(2));
    CHECK(state.set(1) == ElementSet::Of({0}));
    CHECK(changed.empty());
  }

  TEST_CASE("probing a on the star evicts b") {
    const Matroid m = StarTwoOne();
    auto state = BuildInitialState(
        m, Terms({{0.5, ElementSet::Of({0})}, {0.5, ElementSet::Of({1})}}));
    const CriticalSets c = {0, 1};
    const ElementSet blocked = UpdateState(state, c, 0, /*insert=*/true);
    CHECK(blocked == ElementSet::Of({1}));
    CHECK(state.set(0) == ElementSet::Of({0}));
    CHECK(state.set(1) == ElementSet::Of({0}));
    CHECK(CriticalVertex(state, c, 1) == -1);
  }

  TEST_CASE("properties hold along random update sequences") {
    RandomSource rng(53);
    GeneratorSpec spec;
    spec.objective = "linear";
    long updates = 0;
    for (int trial = 0; trial < 60; ++trial) {
      spec.n = 3 + rng.UniformInt(8);
      spec.k_in = 1;
      spec.k_out = 0;
      const auto inst = GenerateInstance(spec, rng);
      const Matroid& m = inst.inner()[0];
      // A random point of P(M) from a convex combination of bases found
      // by greedy over random orders.
      std::vector<double> y(spec.n, 0.0);
      for (int r = 0; r < 4; ++r) {
        std::vector<int> order(spec.n);
        for (int e = 0; e < spec.n; ++e) order[e] = e;
        std::shuffle(order.begin(), order.end(), rng);
        ElementSet basis;
        for (int e : order) {
          if (m.IsIndependent(basis.With(e))) basis.Insert(e);
        }
        for (int e : basis) y[e] += 0.25 * rng.Uniform();
      }
      const ConvexDecomposition d = Decompose(m, y);
      auto state = BuildInitialState(m, d);
      const CriticalSampler sampler(state, y);
      ElementSet support;
      for (int e = 0; e < spec.n; ++e) {
        if (y[e] > 0.0) support.Insert(e);
      }
      const CriticalSets c = sampler.Sample(support, rng);
      REQUIRE_FALSE(CheckProperty1(state).has_value());
      REQUIRE_FALSE(CheckProperty2(state, m).has_value());
      ElementSet available = support;
      while (!available.Empty()) {
        const auto elems = support.ToVector();
        const int e = elems[rng.UniformInt(static_cast<int>(elems.size()))];
        const bool insert = available.Contains(e) && rng.Bernoulli(0.5);
        available.Erase(e);
        const auto before = AllBlockingSets(state, c);
        available = available - UpdateState(state, c, e, insert);
        ++updates;
        CHECK_FALSE(CheckSupport(state, m).has_value());
        CHECK_FALSE(CheckProperty1(state).has_value());
        CHECK_FALSE(CheckProperty2(state, m).has_value());
        CHECK_FALSE(
            CheckProperty3(before, AllBlockingSets(state, c), available)
                .has_value());
      }
    }
    CHECK(updates > 100);
  }

  TEST_CASE("the checks detect a broken state") {
    const Matroid m = StarTwoOne();
    auto state = BuildInitialState(
        m, Terms({{0.5, ElementSet::Of({0})}, {0.5, ElementSet::Of({1})}}));
    // Two elements on one vertex of set 0.
    state.Place(0, 1, 0);
    CHECK(CheckSupport(state, m).has_value());
    const std::vector<ElementSet> before = {ElementSet::Of({1}), ElementSet()};
    const std::vector<ElementSet> after = {ElementSet(), ElementSet()};
    CHECK(CheckProperty3(before, after, ElementSet::Of({0})).has_value());
    CHECK_FALSE(CheckProperty3(before, after, ElementSet::Of({1})).has_value());
  }
}

}  // namespace
}  // namespace probing
