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


#include "probing/instance.h"

#include <algorithm>
#include <cmath>

#include "probing/errors.h"

namespace probing {

void CheckUnitPoint(std::span<const double> x, int n, const char* what) {
  if (static_cast<int>(x.size()) != n) {
    throw InputDomainError(std::string(what) + " has dimension " +
                           std::to_string(x.size()) + ", expected " +
                           std::to_string(n));
  }
  for (size_t e = 0; e < x.size(); ++e) {
    if (!(x[e] >= 0.0 && x[e] <= 1.0)) {
      throw InputDomainError(std::string(what) + "[" + std::to_string(e) +
                             "] = " + std::to_string(x[e]) +
                             " outside [0,1]");
    }
  }
}

ProbingInstance::ProbingInstance(std::vector<double> p,
                                 std::vector<Matroid> inner,
                                 std::vector<Matroid> outer,
                                 SubmodularFunction objective,
                                 std::vector<int> order)
    : p_(std::move(p)),
      inner_(std::move(inner)),
      outer_(std::move(outer)),
      objective_(std::move(objective)),
      order_(std::move(order)) {
  const int n = size();
  if (n > kMaxElements) throw CapabilityError("instances limited to 64 elements");
  CheckUnitPoint(p_, n, "p");
  for (const auto* list : {&inner_, &outer_}) {
    for (const auto& m : *list) {
      if (m.ground_size() != n) {
        throw InputDomainError("matroid " + m.Describe() +
                               " does not match the ground set size");
      }
    }
  }
  if (objective_.ground_size() != n) {
    throw InputDomainError("objective does not match the ground set size");
  }
  if (order_.empty()) {
    for (int e = 0; e < n; ++e) order_.push_back(e);
  }
  std::vector<int> sorted = order_;
  std::sort(sorted.begin(), sorted.end());
  for (int e = 0; e < n; ++e) {
    if (static_cast<int>(sorted.size()) != n || sorted[e] != e) {
      throw InputDomainError("element order must be a permutation of 0..n-1");
    }
  }
}

bool ProbingInstance::InnerIndependent(ElementSet s) const {
  return std::all_of(inner_.begin(), inner_.end(),
                     [s](const Matroid& m) { return m.IsIndependent(s); });
}

bool ProbingInstance::OuterIndependent(ElementSet s) const {
  return std::all_of(outer_.begin(), outer_.end(),
                     [s](const Matroid& m) { return m.IsIndependent(s); });
}

std::string ToString(ProbeOutcome outcome) {
  switch (outcome) {
    case ProbeOutcome::kActive:
      return "active";
    case ProbeOutcome::kInactive:
      return "inactive";
    case ProbeOutcome::kSimulatedActive:
      return "simulated-active";
    case ProbeOutcome::kSimulatedInactive:
      return "simulated-inactive";
  }
  return "unknown";
}

void ProbeTrace::RecordProbe(int e, bool active) {
  probed_.push_back({e, active ? ProbeOutcome::kActive : ProbeOutcome::kInactive});
  queried_.Insert(e);
  if (active) successes_.Insert(e);
}

void ProbeTrace::RecordSimulation(int e, bool active) {
  probed_.push_back({e, active ? ProbeOutcome::kSimulatedActive
                               : ProbeOutcome::kSimulatedInactive});
  simulated_.Insert(e);
}

bool ReplayFeasible(const ProbingInstance& instance, const ProbeTrace& trace,
                    std::string* why) {
  auto fail = [why](std::string message) {
    if (why) *why = std::move(message);
    return false;
  };
  ElementSet q;
  ElementSet s;
  ElementSet sim;
  for (size_t t = 0; t < trace.probed().size(); ++t) {
    const auto& rec = trace.probed()[t];
    switch (rec.outcome) {
      case ProbeOutcome::kActive:
        s.Insert(rec.element);
        [[fallthrough]];
      case ProbeOutcome::kInactive:
        if (q.Contains(rec.element)) {
          return fail("element " + std::to_string(rec.element) +
                      " probed twice");
        }
        q.Insert(rec.element);
        break;
      default:
        sim.Insert(rec.element);
        break;
    }
    if (!instance.OuterIndependent(q)) {
      return fail("probed prefix " + q.ToString() + " at step " +
                  std::to_string(t) + " violates an outer matroid");
    }
    if (!instance.InnerIndependent(s)) {
      return fail("solution prefix " + s.ToString() + " at step " +
                  std::to_string(t) + " violates an inner matroid");
    }
  }
  if (!(sim & q).Empty()) {
    return fail("simulated elements " + (sim & q).ToString() +
                " were also probed");
  }
  if (q != trace.queried() || s != trace.successes()) {
    return fail("trace summary sets disagree with the record list");
  }
  return true;
}

ElementSet SampleROfX(std::span<const double> x, RandomSource& rng) {
  CheckUnitPoint(x, static_cast<int>(x.size()), "x");
  if (x.size() > kMaxElements) throw CapabilityError("more than 64 elements");
  ElementSet r;
  for (size_t e = 0; e < x.size(); ++e) {
    if (rng.Bernoulli(x[e])) r.Insert(static_cast<int>(e));
  }
  return r;
}

ElementSet SampleActive(ElementSet subset, std::span<const double> p,
                        RandomSource& rng) {
  if (!subset.SubsetOf(ElementSet::Full(static_cast<int>(p.size())))) {
    throw InputDomainError("subset outside the ground set");
  }
  ElementSet active;
  for (int e : subset) {
    if (rng.Bernoulli(p[e])) active.Insert(e);
  }
  return active;
}

bool SimulateProbe(int e, std::span<const double> p, RandomSource& rng) {
  if (e < 0 || e >= static_cast<int>(p.size())) {
    throw InputDomainError("element outside the ground set");
  }
  return rng.Bernoulli(p[e]);
}

}  // namespace probing
