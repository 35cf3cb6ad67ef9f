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

#include <set>

#include "probing/errors.h"
#include "probing/instance.h"
#include "probing/oracles.h"
#include "probing/random.h"
#include "test_util.h"

namespace probing {
namespace {

using testing::WithinCi;

TEST_SUITE("core") {
  TEST_CASE("random source is reproducible per (seed, stream)") {
    RandomSource a(42, 7), b(42, 7), c(42, 8);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
      const uint64_t x = a.NextU64();
      CHECK(x == b.NextU64());
      differs = differs || x != c.NextU64();
    }
    CHECK(differs);
  }

  TEST_CASE("split streams do not depend on the parent's position") {
    RandomSource parent(5);
    const RandomSource early = parent.Split(3);
    for (int i = 0; i < 10; ++i) parent.NextU64();
    RandomSource late = parent.Split(3);
    RandomSource early_copy = early;
    CHECK(early_copy.NextU64() == late.NextU64());
  }

  TEST_CASE("uniform integers cover the range evenly") {
    RandomSource rng(1);
    std::vector<long> counts(6, 0);
    const long trials = 60000;
    for (long i = 0; i < trials; ++i) ++counts[rng.UniformInt(6)];
    for (long c : counts) CHECK(WithinCi(c, trials, 1.0 / 6.0));
    CHECK_THROWS_AS(rng.UniformInt(0), InputDomainError);
  }

  TEST_CASE("R(x) at the corners of the cube") {
    RandomSource rng(2);
    const std::vector<double> zeros(5, 0.0), ones(5, 1.0);
    for (int i = 0; i < 100; ++i) {
      CHECK(SampleROfX(zeros, rng).Empty());
      CHECK(SampleROfX(ones, rng) == ElementSet::Full(5));
    }
  }

  TEST_CASE("R(x) inclusion frequencies") {
    RandomSource rng(3);
    const std::vector<double> x(4, 0.5);
    const long trials = 100000;
    std::vector<long> hits(4, 0);
    for (long t = 0; t < trials; ++t) {
      for (int e : SampleROfX(x, rng)) ++hits[e];
    }
    for (long h : hits) CHECK(WithinCi(h, trials, 0.5));
  }

  TEST_CASE("R(x) rejects points outside the cube") {
    RandomSource rng(4);
    const std::vector<double> bad = {0.5, 1.5};
    CHECK_THROWS_AS(SampleROfX(bad, rng), InputDomainError);
    const std::vector<double> neg = {-0.1};
    CHECK_THROWS_AS(SampleROfX(neg, rng), InputDomainError);
  }

  TEST_CASE("act(S) at p = 1 and p = 0") {
    RandomSource rng(5);
    const ElementSet s = ElementSet::Of({0, 2, 3});
    const std::vector<double> ones(4, 1.0), zeros(4, 0.0);
    for (int i = 0; i < 50; ++i) {
      CHECK(SampleActive(s, ones, rng) == s);
      CHECK(SampleActive(s, zeros, rng).Empty());
    }
  }

  TEST_CASE("act(R(x)) has the law of R(x p)") {
    RandomSource rng(6);
    const std::vector<double> p = {0.3, 0.7};
    const std::vector<double> x = {1.0, 1.0};
    const std::vector<double> xp = {0.3, 0.7};
    const long trials = 100000;
    std::vector<uint64_t> lhs, rhs;
    for (long t = 0; t < trials; ++t) {
      lhs.push_back(SampleActive(SampleROfX(x, rng), p, rng).bits());
      rhs.push_back(SampleROfX(xp, rng).bits());
    }
    const std::vector<uint64_t> support = {0, 1, 2, 3};
    CHECK(ChiSquareEqual(lhs, rhs, support).p_value >= 0.01);
    // The product law itself: Pr[{0,1}] = 0.21.
    long both = 0;
    for (uint64_t v : lhs) both += v == 3;
    CHECK(WithinCi(both, trials, 0.21));
  }

  TEST_CASE("simulated probes are plain coins") {
    RandomSource rng(7);
    const std::vector<double> p = {1.0, 0.0, 0.25};
    long hits = 0;
    const long trials = 100000;
    for (long t = 0; t < trials; ++t) {
      CHECK(SimulateProbe(0, p, rng));
      CHECK_FALSE(SimulateProbe(1, p, rng));
      hits += SimulateProbe(2, p, rng);
    }
    CHECK(WithinCi(hits, trials, 0.25));
  }

  TEST_CASE("instance validation") {
    const auto f = SubmodularFunction::Linear({1.0, 1.0});
    CHECK_THROWS_AS(ProbingInstance({0.5, 1.2}, {}, {}, f), InputDomainError);
    CHECK_THROWS_AS(ProbingInstance({0.5}, {}, {}, f), InputDomainError);
    CHECK_THROWS_AS(ProbingInstance({0.5, 0.5}, {Matroid::Uniform(3, 1)}, {}, f),
                    InputDomainError);
    CHECK_THROWS_AS(ProbingInstance({0.5, 0.5}, {}, {}, f, {0, 0}),
                    InputDomainError);
    const ProbingInstance ok({0.5, 0.5}, {Matroid::Uniform(2, 1)}, {}, f);
    CHECK(ok.order() == std::vector<int>{0, 1});
    CHECK(ok.k_in() == 1);
    CHECK(ok.k_out() == 0);
  }

  TEST_CASE("trace replay accepts feasible and rejects infeasible traces") {
    const ProbingInstance inst({1.0, 1.0, 1.0}, {Matroid::Uniform(3, 1)},
                               {Matroid::Uniform(3, 2)},
                               SubmodularFunction::Linear({1, 1, 1}));
    ProbeTrace good;
    good.RecordProbe(0, false);
    good.RecordSimulation(2, true);
    good.RecordProbe(1, true);
    std::string why;
    CHECK(ReplayFeasible(inst, good, &why));
    CHECK(good.queried() == ElementSet::Of({0, 1}));
    CHECK(good.successes() == ElementSet::Of({1}));
    CHECK(good.simulated() == ElementSet::Of({2}));

    ProbeTrace two_active;
    two_active.RecordProbe(0, true);
    two_active.RecordProbe(1, true);
    CHECK_FALSE(ReplayFeasible(inst, two_active, &why));
    CHECK(why.find("inner") != std::string::npos);

    ProbeTrace too_many;
    too_many.RecordProbe(0, false);
    too_many.RecordProbe(1, false);
    too_many.RecordProbe(2, false);
    CHECK_FALSE(ReplayFeasible(inst, too_many, &why));
    CHECK(why.find("outer") != std::string::npos);

    ProbeTrace overlap;
    overlap.RecordProbe(0, false);
    overlap.RecordSimulation(0, true);
    CHECK_FALSE(ReplayFeasible(inst, overlap, &why));
  }
}

}  // namespace
}  // namespace probing
