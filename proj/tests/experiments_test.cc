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

#include "probing/experiments.h"
#include "probing/generator.h"
#include "probing/polytope.h"
#include "probing/random.h"

namespace probing {
namespace {

ProbingInstance Small(RandomSource& rng, int k_out = 1) {
  GeneratorSpec spec;
  spec.n = 5;
  spec.k_out = k_out;
  spec.shape = "mixed";
  spec.objective = "nonmonotone";
  return GenerateInstance(spec, rng);
}

TEST_SUITE("experiments") {
  TEST_CASE("random points lie in the scaled polytope") {
    RandomSource rng(141);
    for (int trial = 0; trial < 10; ++trial) {
      const ProbingInstance inst = Small(rng);
      const ProbingPolytope poly(inst);
      const auto x = RandomPointInP(poly, 3, 0.5, rng);
      CHECK(poly.Contains(x, 0.5));
    }
  }

  TEST_CASE("ten runs are too few to decide") {
    RandomSource rng(142);
    const ProbingInstance inst = Small(rng);
    Report report;
    CheckSchemeBalance(inst, RandomPointInP(ProbingPolytope(inst), 2, 1.0, rng),
                       1.0, 10, rng, &report);
    REQUIRE_FALSE(report.rows().empty());
    CHECK(report.Overall() == Verdict::kInconclusive);
    CHECK(report.ExitCode() == 3);
  }

  TEST_CASE("pipelines pass on a small instance") {
    RandomSource rng(143);
    const ProbingInstance inst = Small(rng);
    const auto x = RandomPointInP(ProbingPolytope(inst), 3, 1.0, rng);
    Report report;
    CheckSchemeBalance(inst, x, 1.0, 20000, rng, &report);
    CheckBlockingSets(inst, x, 1.0, 20000, rng, &report);
    CheckMappingProperties(inst, x, 1.0, 200, rng, &report);
    CheckRelaxation(inst, &report);
    GreedyConfig config;
    config.b = 0.5;
    config.delta = 0.01;
    CheckMeasuredGreedy(inst, config, rng, &report);
    CheckEndToEnd(inst, config, 20000, rng, &report);
    for (const ReportRow& row : report.rows()) {
      CHECK_MESSAGE(row.verdict != Verdict::kFail, row.tag, " ", row.check);
    }
  }

  TEST_CASE("a wrong closed form would be caught") {
    // The conditional-law rows are two-sided, so a biased estimate fails.
    CHECK(JudgeWithin(0.30, 0.25, 0.01) == Verdict::kFail);
    CHECK(JudgeWithin(0.255, 0.25, 0.01) == Verdict::kPass);
  }

  TEST_CASE("same seed, same report") {
    const ProbingInstance inst = [] {
      RandomSource rng(144);
      return Small(rng);
    }();
    auto run = [&] {
      RandomSource rng(145);
      Report report;
      GreedyConfig config;
      config.b = 0.5;
      config.delta = 0.05;
      CheckEndToEnd(inst, config, 2000, rng, &report);
      return report.ToCsv();
    };
    CHECK(run() == run());
  }
}

}  // namespace
}  // namespace probing
