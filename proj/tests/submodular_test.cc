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
#include "probing/random.h"
#include "probing/submodular.h"

namespace probing {
namespace {

// f(S) = 1 if S is nonempty, on two elements.
SubmodularFunction NonEmptyIndicator() {
  return SubmodularFunction::Table(2, {0.0, 1.0, 1.0, 1.0});
}

SubmodularFunction RandomObjective(int n, const char* family, RandomSource& rng) {
  GeneratorSpec spec;
  spec.n = n;
  spec.k_in = 0;
  spec.k_out = 0;
  spec.objective = family;
  return GenerateInstance(spec, rng).objective();
}

std::vector<double> RandomPoint(int n, RandomSource& rng) {
  std::vector<double> y(n);
  for (double& v : y) v = rng.Uniform();
  return y;
}

TEST_SUITE("submodular") {
  TEST_CASE("values of the basic families") {
    const auto linear = SubmodularFunction::Linear({1.0, 2.0});
    CHECK(linear(ElementSet()) == 0.0);
    CHECK(linear(ElementSet::Full(2)) == doctest::Approx(3.0));

    const auto cut = SubmodularFunction::Cut(2, {{0, 1, 1.0}}, false);
    CHECK(cut(ElementSet::Of({0})) == doctest::Approx(1.0));
    CHECK(cut(ElementSet::Full(2)) == doctest::Approx(0.0));
    const auto dcut = SubmodularFunction::Cut(2, {{0, 1, 1.0}}, true);
    CHECK(dcut(ElementSet::Of({1})) == doctest::Approx(0.0));

    const auto cover = SubmodularFunction::Coverage(
        3, {1.0, 2.0, 4.0}, {{0, 1}, {1, 2}, {}});
    CHECK(cover(ElementSet::Of({0, 1})) == doctest::Approx(7.0));
    CHECK(cover(ElementSet::Of({2})) == doctest::Approx(0.0));
    CHECK_THROWS_AS(cover(ElementSet::Of({3})), InputDomainError);
  }

  TEST_CASE("tables must be normalized and nonnegative") {
    CHECK_THROWS_AS(SubmodularFunction::Table(1, {0.5, 1.0}), InputDomainError);
    CHECK_THROWS_AS(SubmodularFunction::Table(1, {0.0, -1.0}), InputDomainError);
    CHECK_THROWS_AS(SubmodularFunction::Table(2, {0.0, 1.0}), InputDomainError);
  }

  TEST_CASE("submodularity check finds a supermodular pair") {
    // f({a,b}) = 3 > f(a) + f(b).
    const auto f = SubmodularFunction::Table(2, {0.0, 1.0, 1.0, 3.0});
    const auto witness = FindSubmodularityViolation(f);
    REQUIRE(witness.has_value());
    CHECK(witness->excess == doctest::Approx(1.0));
    CHECK_FALSE(FindSubmodularityViolation(NonEmptyIndicator()).has_value());
  }

  TEST_CASE("generated objectives are submodular") {
    RandomSource rng(21);
    for (const char* family : {"linear", "coverage", "cut", "nonmonotone"}) {
      for (int trial = 0; trial < 10; ++trial) {
        const auto f = RandomObjective(2 + rng.UniformInt(7), family, rng);
        CHECK_FALSE(FindSubmodularityViolation(f).has_value());
      }
    }
  }

  TEST_CASE("multilinear extension agrees with f on vertices") {
    RandomSource rng(22);
    const auto f = RandomObjective(5, "nonmonotone", rng);
    for (uint64_t mask = 0; mask < 32; ++mask) {
      std::vector<double> y(5);
      for (int e = 0; e < 5; ++e) y[e] = (mask >> e) & 1;
      CHECK(MultilinearExact(f, y) == doctest::Approx(f(ElementSet(mask))));
    }
  }

  TEST_CASE("multilinear extension of the nonempty indicator") {
    CHECK(MultilinearExact(NonEmptyIndicator(), std::vector<double>{0.5, 0.5}) ==
          doctest::Approx(0.75));
  }

  TEST_CASE("multilinear extension of linear functions is linear") {
    RandomSource rng(23);
    const std::vector<double> w = {0.5, 1.5, 2.0, 0.25};
    const auto f = SubmodularFunction::Linear(w);
    for (int trial = 0; trial < 20; ++trial) {
      const auto y = RandomPoint(4, rng);
      double expected = 0.0;
      for (int e = 0; e < 4; ++e) expected += w[e] * y[e];
      CHECK(MultilinearExact(f, y) == doctest::Approx(expected));
    }
  }

  TEST_CASE("sampled multilinear estimates are within four standard errors") {
    RandomSource rng(24);
    for (int trial = 0; trial < 5; ++trial) {
      const int n = 6 + rng.UniformInt(5);
      const auto f = RandomObjective(n, "nonmonotone", rng);
      const auto y = RandomPoint(n, rng);
      const Estimate est = MultilinearSampled(f, y, 100000, rng);
      CHECK(est.samples == 100000);
      CHECK(std::abs(est.value - MultilinearExact(f, y)) <= 4.0 * est.std_error);
    }
  }

  TEST_CASE("exact multilinear extension rejects points outside the cube") {
    CHECK_THROWS_AS(MultilinearExact(NonEmptyIndicator(),
                                     std::vector<double>{1.5, 0.0}),
                    InputDomainError);
  }

  TEST_CASE("correlated extension: linear case equals F") {
    const auto f = SubmodularFunction::Linear({1.0, 2.0, 3.0});
    const std::vector<double> y = {0.2, 0.5, 0.9};
    CHECK(FPlus(f, y).value == doctest::Approx(0.2 + 1.0 + 2.7));
  }

  TEST_CASE("correlated extension of the nonempty indicator") {
    const FPlusResult r = FPlus(NonEmptyIndicator(), std::vector<double>{0.5, 0.5});
    CHECK(r.value == doctest::Approx(1.0));
    CHECK(r.duality_gap <= 1e-7);
    double on_singletons = 0.0;
    for (const auto& [set, weight] : r.alpha) {
      if (set.Size() == 1) on_singletons += weight;
    }
    CHECK(on_singletons == doctest::Approx(1.0));
  }

  TEST_CASE("correlated extension at zero and beyond the cap") {
    CHECK(FPlus(NonEmptyIndicator(), std::vector<double>{0.0, 0.0}).value == 0.0);
    const auto big = SubmodularFunction::Linear(std::vector<double>(13, 1.0));
    CHECK_THROWS_AS(FPlus(big, std::vector<double>(13, 0.5)), CapabilityError);
  }

  TEST_CASE("correlated extension dominates F with a tight dual") {
    RandomSource rng(25);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 2 + rng.UniformInt(7);
      const auto f = RandomObjective(
          n, trial % 2 ? "nonmonotone" : "coverage", rng);
      const auto y = RandomPoint(n, rng);
      const FPlusResult r = FPlus(f, y);
      CHECK(r.value >= MultilinearExact(f, y) - 1e-9);
      CHECK(r.duality_gap <= 1e-7);
    }
  }

  TEST_CASE("pruning") {
    const std::vector<int> order = {0, 1};
    // f(a) = f(b) = 1, f(ab) = 0.4.
    const auto f = SubmodularFunction::Table(2, {0.0, 1.0, 1.0, 0.4});
    CHECK(PruneEta(f, ElementSet::Full(2), order) == ElementSet::Of({0}));
    CHECK(PruneEta(f, ElementSet(), order).Empty());
    const auto g = SubmodularFunction::Linear({1.0, 0.0});
    CHECK(PruneEta(g, ElementSet::Full(2), order) == ElementSet::Full(2));
  }

  TEST_CASE("pruning never lowers the value") {
    RandomSource rng(26);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 3 + rng.UniformInt(5);
      const auto f = RandomObjective(n, "nonmonotone", rng);
      std::vector<int> order(n);
      for (int e = 0; e < n; ++e) order[e] = e;
      std::shuffle(order.begin(), order.end(), rng);
      for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        const ElementSet s(mask);
        const ElementSet kept = PruneEta(f, s, order);
        CHECK(kept.SubsetOf(s));
        CHECK(f(kept) >= f(s) - 1e-12);
      }
      if (IsMonotone(f)) {
        CHECK(PruneEta(f, ElementSet::Full(n), order) == ElementSet::Full(n));
      }
    }
  }
}

}  // namespace
}  // namespace probing
