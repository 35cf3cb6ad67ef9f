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

#include <cstdio>
#include <json.hpp>
#include <string>

#include "probing/errors.h"
#include "probing/generator.h"
#include "probing/io.h"
#include "probing/random.h"

namespace probing {
namespace {

using nlohmann::json;

// Same independence oracles and objective values on every subset.
void CheckSameInstance(const ProbingInstance& a, const ProbingInstance& b) {
  REQUIRE(a.size() == b.size());
  REQUIRE(a.k_in() == b.k_in());
  REQUIRE(a.k_out() == b.k_out());
  CHECK(a.p() == b.p());
  CHECK(a.order() == b.order());
  const int n = a.size();
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    const ElementSet s = ElementSet(mask);
    for (int j = 0; j < a.k_in(); ++j) {
      CHECK(a.inner()[j].IsIndependent(s) == b.inner()[j].IsIndependent(s));
    }
    for (int j = 0; j < a.k_out(); ++j) {
      CHECK(a.outer()[j].IsIndependent(s) == b.outer()[j].IsIndependent(s));
    }
    CHECK(a.objective()(s) == doctest::Approx(b.objective()(s)));
  }
}

TEST_SUITE("io") {
  TEST_CASE("instance from hand-written JSON") {
    const json j = json::parse(R"({
      "elements": 3,
      "p": [0.5, 1.0, 0.25],
      "inner": [{"type": "transversal", "vertices": 1,
                 "edges": [[0, 0], [1, 0], [2, 0]]}],
      "outer": [{"type": "partition",
                 "blocks": [{"elements": [0, 1], "capacity": 1}]}],
      "objective": {"type": "linear", "weights": [1, 2, 3]}
    })");
    const ProbingInstance inst = InstanceFromJson(j);
    CHECK(inst.size() == 3);
    CHECK(inst.inner()[0].Rank(ElementSet::Full(3)) == 1);
    CHECK(inst.outer()[0].IsIndependent(ElementSet::Of({0, 2})));
    CHECK_FALSE(inst.outer()[0].IsIndependent(ElementSet::Of({0, 1})));
    CHECK(inst.objective()(ElementSet::Of({1, 2})) == doctest::Approx(5.0));
    CHECK(inst.order() == std::vector<int>{0, 1, 2});
  }

  TEST_CASE("every matroid and objective type round-trips") {
    const int n = 4;
    const std::vector<Matroid> matroids = {
        Matroid::Transversal(n, 2, {{0, 0}, {1, 0}, {1, 1}, {3, 1}}),
        Matroid::Uniform(n, 2, ElementSet::Of({0, 1, 2})),
        Matroid::Partition(n, {{ElementSet::Of({0, 3}), 1}, {ElementSet::Of({1}), 1}}),
        Matroid::Enumerated(n, Matroid::Uniform(n, 1).IndependentSets()),
    };
    const std::vector<SubmodularFunction> objectives = {
        SubmodularFunction::Linear({1.0, 0.5, 2.0, 0.0}),
        SubmodularFunction::Coverage(n, {1.0, 2.0, 3.0},
                                     {{0}, {0, 1},
                                      {2}, {1, 2}}),
        SubmodularFunction::Cut(n, {{0, 1, 1.5}, {2, 3, 0.5}}, true),
        SubmodularFunction::Cut(n, {{0, 1, 1.5}, {1, 3, 2.0}}, false),
    };
    for (size_t i = 0; i < matroids.size(); ++i) {
      const ProbingInstance inst({0.1, 0.2, 0.3, 0.4}, {matroids[i]},
                                 {matroids[(i + 1) % matroids.size()]},
                                 objectives[i], {3, 2, 1, 0});
      const json encoded = InstanceToJson(inst);
      CheckSameInstance(inst, InstanceFromJson(encoded));
      CHECK(InstanceToJson(InstanceFromJson(encoded)) == encoded);
      // Through text as well.
      CheckSameInstance(inst, InstanceFromJson(json::parse(encoded.dump())));
    }
    const SubmodularFunction table = SubmodularFunction::Table(
        2, std::vector<double>{0.0, 1.0, 2.0, 2.5});
    const json t = ObjectiveToJson(table);
    CHECK(t["type"] == "table");
    CHECK(ObjectiveFromJson(t, 2)(ElementSet::Of({0, 1})) == doctest::Approx(2.5));
  }

  TEST_CASE("k-set and matching instances round-trip") {
    RandomSource rng(121);
    const KSetInstance kset = GenerateKSet(5, 3, 2, rng);
    const json kj = KSetToJson(kset);
    const KSetInstance kset2 = KSetFromJson(kj);
    CHECK(KSetToJson(kset2) == kj);
    for (int e = 0; e < 5; ++e) {
      CHECK(kset2.ExpectedValue(e) == doctest::Approx(kset.ExpectedValue(e)));
    }

    const MatchingInstance m = GenerateMatching(3, 4, 0.7, rng);
    const json mj = MatchingToJson(m);
    const MatchingInstance m2 = MatchingFromJson(mj);
    CHECK(MatchingToJson(m2) == mj);
    CHECK(m2.num_edges() == m.num_edges());
    CHECK(m2.patience() == m.patience());
  }

  TEST_CASE("malformed input names the problem") {
    auto message = [](const char* text) -> std::string {
      try {
        InstanceFromJson(json::parse(text));
      } catch (const InputDomainError& err) {
        return err.what();
      }
      return "";
    };
    CHECK(message(R"({"p": [0.5]})").find("elements") != std::string::npos);
    CHECK(message(R"({"elements": 1, "p": [0.5],
                     "objective": {"type": "linear", "weights": [1]},
                     "inner": [{"type": "bogus"}]})")
              .find("bogus") != std::string::npos);
    CHECK(message(R"({"elements": 1, "p": [0.5],
                     "objective": {"type": "linear", "weights": [1, 2]}})")
              .find("weights") != std::string::npos);
    CHECK(message(R"({"elements": 2, "p": [0.5, 0.5],
                     "objective": {"type": "linear", "weights": [1, 1]},
                     "inner": [{"type": "uniform", "rank": 1, "subset": [5]}]})")
              .find("element 5") != std::string::npos);
    CHECK_THROWS_AS(InstanceFromJson(json::parse(R"({"elements": 1, "p": [1.5],
        "objective": {"type": "linear", "weights": [1]}})")),
                    ProbingError);
  }

  TEST_CASE("file helpers") {
    const std::string path = "io_test_roundtrip.json";
    WriteTextFile(path, R"({"a": [1, 2]})");
    CHECK(ReadJsonFile(path)["a"][1] == 2);
    WriteTextFile(path, "{not json");
    CHECK_THROWS_AS(ReadJsonFile(path), InputDomainError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(ReadJsonFile("does/not/exist.json"), InputDomainError);
  }
}

TEST_SUITE("generator") {
  TEST_CASE("spec parsing") {
    const GeneratorSpec spec =
        ParseGeneratorSpec("n=8,k_in=2,k_out=0,shape=mixed,objective=cut,p=0.3:0.9");
    CHECK(spec.n == 8);
    CHECK(spec.k_in == 2);
    CHECK(spec.k_out == 0);
    CHECK(spec.shape == "mixed");
    CHECK(spec.objective == "cut");
    CHECK(spec.p_min == doctest::Approx(0.3));
    CHECK(spec.p_max == doctest::Approx(0.9));
    CHECK(ParseGeneratorSpec("").n == 6);
    CHECK_THROWS_AS(ParseGeneratorSpec("n"), ConfigError);
    CHECK_THROWS_AS(ParseGeneratorSpec("colour=red"), ConfigError);
    CHECK_THROWS_AS(ParseGeneratorSpec("n=six"), ConfigError);
  }

  TEST_CASE("unusable specs are rejected") {
    RandomSource rng(131);
    GeneratorSpec spec;
    spec.vertices = 0;
    CHECK_THROWS_AS(GenerateInstance(spec, rng), ConfigError);
    spec = GeneratorSpec{};
    spec.shape = "graphic";
    CHECK_THROWS_AS(GenerateInstance(spec, rng), ConfigError);
    spec = GeneratorSpec{};
    spec.objective = "entropy";
    CHECK_THROWS_AS(GenerateInstance(spec, rng), ConfigError);
    spec = GeneratorSpec{};
    spec.n = 65;
    CHECK_THROWS_AS(GenerateInstance(spec, rng), ConfigError);
  }

  TEST_CASE("same seed, same bytes") {
    const GeneratorSpec spec = ParseGeneratorSpec("n=7,k_in=2,k_out=1,shape=mixed");
    RandomSource a(2026), b(2026), c(2027);
    const std::string first = InstanceToJson(GenerateInstance(spec, a)).dump();
    CHECK(InstanceToJson(GenerateInstance(spec, b)).dump() == first);
    CHECK(InstanceToJson(GenerateInstance(spec, c)).dump() != first);
  }

  TEST_CASE("generated instances satisfy the axioms") {
    RandomSource rng(132);
    const char* shapes[] = {"transversal", "uniform", "partition", "mixed"};
    const char* objectives[] = {"linear", "coverage", "cut", "nonmonotone"};
    for (int i = 0; i < 100; ++i) {
      GeneratorSpec spec;
      spec.n = 3 + i % 6;
      spec.k_in = 1 + i % 2;
      spec.k_out = i % 3;
      spec.shape = shapes[i % 4];
      spec.objective = objectives[(i / 4) % 4];
      const ProbingInstance inst = GenerateInstance(spec, rng);
      for (double p : inst.p()) {
        CHECK(p >= spec.p_min);
        CHECK(p <= spec.p_max);
      }
      auto check_matroid = [&](const Matroid& m) {
        CHECK(m.Rank(ElementSet::Full(spec.n)) >= 1);
        // Enumerated construction re-checks downward closure and exchange.
        CHECK_NOTHROW(Matroid::Enumerated(spec.n, m.IndependentSets()));
      };
      for (const Matroid& m : inst.inner()) check_matroid(m);
      for (const Matroid& m : inst.outer()) check_matroid(m);
      CHECK_FALSE(FindSubmodularityViolation(inst.objective()).has_value());
      CHECK(inst.objective()(ElementSet()) == doctest::Approx(0.0));
      const std::string family = spec.objective;
      if (family == "linear" || family == "coverage") {
        CHECK(IsMonotone(inst.objective()));
      }
    }
  }
}

}  // namespace
}  // namespace probing
