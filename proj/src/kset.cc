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


#include "probing/kset.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "probing/errors.h"
#include "probing/instance.h"
#include "probing/lp.h"

namespace probing {

KSetInstance::KSetInstance(std::vector<int> capacity,
                           std::vector<KSetColumn> columns)
    : capacity_(std::move(capacity)), columns_(std::move(columns)) {
  const int d = dims();
  const int n = size();
  if (d > kMaxElements || n > kMaxElements) {
    throw CapabilityError("k-set instances limited to 64 columns and rows");
  }
  for (int c : capacity_) {
    if (c < 0) throw InputDomainError("capacities must be nonnegative");
  }
  expected_value_.assign(n, 0.0);
  expected_size_.assign(static_cast<size_t>(n) * d, 0.0);
  for (int e = 0; e < n; ++e) {
    const auto& col = columns_[e];
    if (!col.coords.SubsetOf(ElementSet::Full(d))) {
      throw InputDomainError("column " + std::to_string(e) +
                             " uses a coordinate outside [d]");
    }
    k_ = std::max(k_, col.coords.Size());
    if (col.outcomes.empty()) {
      throw InputDomainError("column " + std::to_string(e) + " has no outcomes");
    }
    double total = 0.0;
    for (const auto& out : col.outcomes) {
      if (!(out.probability >= 0.0) || !std::isfinite(out.value) ||
          out.value < 0.0) {
        throw InputDomainError("column " + std::to_string(e) +
                               " has an invalid outcome");
      }
      if (!out.size.SubsetOf(col.coords)) {
        throw InputDomainError("column " + std::to_string(e) +
                               " has a size outside its coordinates");
      }
      total += out.probability;
      expected_value_[e] += out.probability * out.value;
      for (int j : out.size) {
        expected_size_[static_cast<size_t>(e) * d + j] += out.probability;
      }
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw InputDomainError("outcome probabilities of column " +
                             std::to_string(e) + " sum to " +
                             std::to_string(total));
    }
  }
}

int KSetInstance::SampleOutcome(int e, RandomSource& rng) const {
  const auto& outcomes = columns_[e].outcomes;
  const double u = rng.Uniform();
  double running = 0.0;
  for (size_t i = 0; i + 1 < outcomes.size(); ++i) {
    running += outcomes[i].probability;
    if (u < running) return static_cast<int>(i);
  }
  return static_cast<int>(outcomes.size()) - 1;
}

std::vector<double> SolveKSetLp(const KSetInstance& instance, double* value) {
  const int n = instance.size();
  const int d = instance.dims();
  LinearProgram lp(n);
  for (int e = 0; e < n; ++e) lp.objective[e] = instance.ExpectedValue(e);
  for (int j = 0; j < d; ++j) {
    std::vector<double> row(n);
    for (int e = 0; e < n; ++e) row[e] = instance.ExpectedSize(e, j);
    lp.AddRow(std::move(row), RowSense::kLessEqual, instance.capacity()[j]);
  }
  for (int e = 0; e < n; ++e) {
    std::vector<double> row(n, 0.0);
    row[e] = 1.0;
    lp.AddRow(std::move(row), RowSense::kLessEqual, 1.0);
  }
  const LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw InvariantViolation("k-set LP contains 0 and is bounded");
  }
  if (value) *value = sol.value;
  std::vector<double> x(n);
  for (int e = 0; e < n; ++e) x[e] = std::clamp(sol.x[e], 0.0, 1.0);
  return x;
}

PreparedKSet::PreparedKSet(const KSetInstance& instance, std::vector<double> x)
    : instance_(&instance), x_(std::move(x)) {
  const int n = instance.size();
  CheckUnitPoint(x_, n, "x");
  for (int j = 0; j < instance.dims(); ++j) {
    ElementSet members;
    std::vector<double> y(n, 0.0);
    for (int e = 0; e < n; ++e) {
      if (instance.columns()[e].coords.Contains(j)) members.Insert(e);
      y[e] = std::min(1.0, instance.ExpectedSize(e, j) * x_[e]);
    }
    matroids_.push_back(Matroid::Uniform(n, instance.capacity()[j], members));
    ConvexDecomposition d;
    try {
      d = Decompose(matroids_.back(), y);
    } catch (const InfeasibilityError& err) {
      throw InfeasibilityError("coordinate " + std::to_string(j) +
                               ": x violates the capacity (" + err.what() +
                               ")");
    }
    states_.push_back(BuildInitialState(matroids_.back(), d));
    samplers_.emplace_back(states_.back(), y);
  }
}

KSetRun PreparedKSet::Run(RandomSource& rng, const KSetOptions& options) const {
  ElementSet a = SampleROfX(x_, rng);
  if (options.force_in_input >= 0) a.Insert(options.force_in_input);
  return RunOn(a, rng, options);
}

KSetRun PreparedKSet::RunOn(ElementSet a, RandomSource& rng,
                            const KSetOptions& options) const {
  const KSetInstance& inst = *instance_;
  const int d = inst.dims();
  std::vector<SupportState> states = states_;
  std::vector<CriticalSets> critical(d);
  for (int j = 0; j < d; ++j) samplers_[j].Sample(a, rng, &critical[j]);

  KSetRun run;
  run.input = a;
  run.load.assign(d, 0);
  const std::vector<int> elements = a.ToVector();
  ElementSet available = a;
  while (!available.Empty()) {
    const int e = elements[rng.UniformInt(static_cast<int>(elements.size()))];
    ++run.picks;
    const bool was_available = available.Contains(e);
    const KSetOutcome& outcome = inst.columns()[e].outcomes[inst.SampleOutcome(e, rng)];
    if (was_available) {
      available.Erase(e);
      run.probed.Insert(e);
      run.value += outcome.value;
      for (int j : outcome.size) ++run.load[j];
    }
    ElementSet blocked;
    for (int j : outcome.size) {
      blocked = blocked | UpdateState(states[j], critical[j], e, was_available);
      if (options.check_invariants) {
        if (auto err = CheckSupport(states[j], matroids_[j])) {
          throw InvariantViolation("k-set coordinate " + std::to_string(j) +
                                   ": " + *err);
        }
      }
    }
    available = available - blocked;
  }
  for (int j = 0; j < d; ++j) {
    if (run.load[j] > inst.capacity()[j]) {
      throw InvariantViolation("capacity of coordinate " + std::to_string(j) +
                               " exceeded");
    }
  }
  return run;
}

namespace {

struct KSetDp {
  const KSetInstance& inst;
  std::map<std::pair<uint64_t, std::vector<int>>, double> memo;

  double Value(ElementSet probed, const std::vector<int>& load) {
    const auto key = std::make_pair(probed.bits(), load);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    double best = 0.0;
    for (int e = 0; e < inst.size(); ++e) {
      if (probed.Contains(e)) continue;
      const auto& col = inst.columns()[e];
      bool fits = true;
      for (const auto& out : col.outcomes) {
        if (out.probability <= 0.0) continue;
        for (int j : out.size) fits = fits && load[j] < inst.capacity()[j];
      }
      if (!fits) continue;
      double v = 0.0;
      for (const auto& out : col.outcomes) {
        if (out.probability <= 0.0) continue;
        std::vector<int> next = load;
        for (int j : out.size) ++next[j];
        v += out.probability * (out.value + Value(probed.With(e), next));
      }
      best = std::max(best, v);
    }
    memo.emplace(key, best);
    return best;
  }
};

}  // namespace

double KSetBruteForce(const KSetInstance& instance) {
  if (instance.size() > 10) {
    throw CapabilityError("k-set brute force limited to 10 columns");
  }
  KSetDp dp{instance, {}};
  return dp.Value(ElementSet(), std::vector<int>(instance.dims(), 0));
}

}  // namespace probing
