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


// Measured continuous greedy: y <- y + delta * I(t) * (1 - y), where I(t)
// maximizes the gradient weights over the polytope. Runs in the activated
// space z = p*x, so the output y lies in b*(p*P) and y/p in b*P.

#ifndef PROBING_GREEDY_H_
#define PROBING_GREEDY_H_

#include <vector>

#include "probing/polytope.h"
#include "probing/random.h"
#include "probing/submodular.h"

namespace probing {

struct GreedyConfig {
  enum class Gradient { kAuto, kExact, kSampled };

  double b = 1.0;        // stopping time, in (0, 1]
  double delta = 0.01;   // step size; must divide b
  Gradient gradient = Gradient::kAuto;  // exact when n <= 12
  long samples = 10000;  // per step, shared across coordinates
  bool record_trajectory = true;
};

struct GreedyStep {
  double t = 0.0;
  double value = 0.0;  // F(y(t)), exact when n <= 20
  std::vector<double> y;
};

struct GreedyResult {
  std::vector<double> y;  // in b * (p*P)
  std::vector<double> x;  // y / p, in b * P
  double value = 0.0;     // F(y)
  int steps = 0;
  std::vector<GreedyStep> trajectory;  // y(0), y(delta), ..., y(b)
};

// Throws ConfigError when b or delta are out of range or delta does not
// divide b within 1e-12.
GreedyResult MeasuredContinuousGreedy(const SubmodularFunction& f,
                                      const ActivatedPolytope& polytope,
                                      const GreedyConfig& config,
                                      RandomSource& rng);

// Gradient weights F(y v 1_e) - F(y) from a value table.
std::vector<double> ExactGradient(std::span<const double> table,
                                  std::span<const double> y);

// Compares a recorded trajectory with the per-step gain target
// delta * (e^{-t} * target - F(y(t))) - slack and the coordinate cap
// y_e(t) <= 1 - (1 - delta)^{t / delta}.
struct TrajectoryAudit {
  int step_violations = 0;
  double worst_step_margin = 0.0;  // min over steps of gain - bound
  int cap_violations = 0;
  double worst_cap_excess = 0.0;
  bool nondecreasing = true;
};
TrajectoryAudit AuditTrajectory(const GreedyResult& result, double delta,
                                double target, double slack);

}  // namespace probing

#endif  // PROBING_GREEDY_H_
