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


#include "probing/greedy.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "probing/errors.h"
#include "probing/matroid.h"

namespace probing {

std::vector<double> ExactGradient(std::span<const double> table,
                                  std::span<const double> y) {
  const int n = static_cast<int>(y.size());
  std::vector<double> prob(size_t{1} << n);
  prob[0] = 1.0;
  for (int e = 0; e < n; ++e) {
    const size_t half = size_t{1} << e;
    for (size_t mask = 0; mask < half; ++mask) {
      prob[mask | half] = prob[mask] * y[e];
      prob[mask] *= 1.0 - y[e];
    }
  }
  double base = 0.0;
  for (size_t mask = 0; mask < prob.size(); ++mask) {
    base += prob[mask] * table[mask];
  }
  std::vector<double> grad(n, 0.0);
  for (int e = 0; e < n; ++e) {
    const size_t bit = size_t{1} << e;
    double raised = 0.0;
    for (size_t mask = 0; mask < prob.size(); ++mask) {
      if (mask & bit) continue;
      raised += (prob[mask] + prob[mask | bit]) * table[mask | bit];
    }
    grad[e] = raised - base;
  }
  return grad;
}

namespace {

// Common random numbers: one batch of sampled sets serves every coordinate.
std::vector<double> SampledGradient(const SubmodularFunction& f,
                                    std::span<const double> y, long samples,
                                    RandomSource& rng) {
  const int n = static_cast<int>(y.size());
  std::vector<double> grad(n, 0.0);
  for (long s = 0; s < samples; ++s) {
    ElementSet r;
    for (int e = 0; e < n; ++e) {
      if (rng.Bernoulli(y[e])) r.Insert(e);
    }
    const double base = f.Value(r);
    for (int e = 0; e < n; ++e) {
      grad[e] += r.Contains(e) ? 0.0 : f.Value(r.With(e)) - base;
    }
  }
  for (double& g : grad) g /= samples;
  return grad;
}

}  // namespace

GreedyResult MeasuredContinuousGreedy(const SubmodularFunction& f,
                                      const ActivatedPolytope& polytope,
                                      const GreedyConfig& config,
                                      RandomSource& rng) {
  const int n = polytope.size();
  if (f.ground_size() != n) {
    throw InputDomainError("objective does not match the polytope");
  }
  if (!(config.b > 0.0 && config.b <= 1.0)) {
    throw ConfigError("b must lie in (0, 1]");
  }
  if (!(config.delta > 0.0 && config.delta <= config.b)) {
    throw ConfigError("delta must lie in (0, b]");
  }
  const long steps = std::lround(config.b / config.delta);
  if (std::abs(steps * config.delta - config.b) > 1e-12) {
    throw ConfigError("delta must divide b");
  }
  bool exact = config.gradient == GreedyConfig::Gradient::kExact;
  if (config.gradient == GreedyConfig::Gradient::kAuto) exact = n <= kExactCap;
  if (exact && n > kTableCap) {
    throw CapabilityError("exact gradients limited to n <= 20");
  }
  if (!exact && config.samples < 1) {
    throw ConfigError("sampled gradients need a positive sample count");
  }
  const bool tabulate = n <= kTableCap;
  std::vector<double> table;
  if (tabulate) table = f.ValueTable();
  auto value_at = [&](std::span<const double> y) {
    return tabulate ? MultilinearFromTable(table, y)
                    : std::numeric_limits<double>::quiet_NaN();
  };

  GreedyResult result;
  std::vector<double> y(n, 0.0);
  if (config.record_trajectory) result.trajectory.push_back({0.0, value_at(y), y});
  for (long step = 0; step < steps; ++step) {
    const std::vector<double> grad =
        exact ? ExactGradient(table, y)
              : SampledGradient(f, y, config.samples, rng);
    const std::vector<double> direction = polytope.LinearMax(grad);
    // Each coordinate moves toward 1 by a delta * I_e fraction, so
    // y(T) <= sum_t delta * I(t): a convex combination of points of p*P
    // scaled by T = b, which is in b*(p*P) because the polytope is down-closed.
    for (int e = 0; e < n; ++e) {
      y[e] += config.delta * direction[e] * (1.0 - y[e]);
    }
    if (config.record_trajectory) {
      result.trajectory.push_back(
          {(step + 1) * config.delta, value_at(y), y});
    }
  }
  result.steps = static_cast<int>(steps);
  result.y = y;
  result.x = polytope.ToX(y);
  result.value = value_at(y);
  return result;
}

TrajectoryAudit AuditTrajectory(const GreedyResult& result, double delta,
                                double target, double slack) {
  TrajectoryAudit audit;
  audit.worst_step_margin = std::numeric_limits<double>::infinity();
  const auto& traj = result.trajectory;
  for (size_t i = 0; i < traj.size(); ++i) {
    const double t = traj[i].t;
    const double cap = 1.0 - std::pow(1.0 - delta, std::round(t / delta));
    for (size_t e = 0; e < traj[i].y.size(); ++e) {
      const double excess = traj[i].y[e] - cap;
      if (excess > 1e-12) {
        ++audit.cap_violations;
        audit.worst_cap_excess = std::max(audit.worst_cap_excess, excess);
      }
      if (i > 0 && traj[i].y[e] < traj[i - 1].y[e]) audit.nondecreasing = false;
    }
    if (i + 1 == traj.size()) break;
    const double gain = traj[i + 1].value - traj[i].value;
    const double bound =
        delta * (std::exp(-t) * target - traj[i].value) - slack;
    const double margin = gain - bound;
    audit.worst_step_margin = std::min(audit.worst_step_margin, margin);
    if (margin < -1e-12) ++audit.step_violations;
  }
  if (traj.size() < 2) audit.worst_step_margin = 0.0;
  return audit;
}

}  // namespace probing
