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


#include "probing/stoch_cr.h"

#include <algorithm>
#include <numeric>

#include "probing/errors.h"

namespace probing {

PreparedScheme::PreparedScheme(const ProbingInstance& instance,
                               std::vector<double> x, double b)
    : instance_(&instance), x_(std::move(x)), b_(b) {
  const int n = instance.size();
  CheckUnitPoint(x_, n, "x");
  if (!(b_ > 0.0 && b_ <= 1.0)) throw InputDomainError("b must lie in (0, 1]");
  for (int e = 0; e < n; ++e) {
    if (x_[e] > 0.0) support_.Insert(e);
  }
  const int total = instance.k_in() + instance.k_out();
  for (int j = 0; j < total; ++j) {
    const bool inner = j < instance.k_in();
    const Matroid& m = inner ? instance.inner()[j]
                             : instance.outer()[j - instance.k_in()];
    const std::string label = std::string(inner ? "inner" : "outer") +
                              " matroid " +
                              std::to_string(inner ? j : j - instance.k_in());
    if (!m.HasTransversalGraph()) {
      throw CapabilityError(label + " (" + m.Describe() +
                            ") has no bipartite representation");
    }
    std::vector<double> y(n);
    for (int e = 0; e < n; ++e) {
      y[e] = (inner ? instance.p()[e] : 1.0) * x_[e] / b_;
      if (y[e] > 1.0 + 1e-9) {
        throw InfeasibilityError(label + ": coordinate " + std::to_string(e) +
                                 " of the scaled point exceeds 1");
      }
      y[e] = std::min(y[e], 1.0);
    }
    ConvexDecomposition d;
    try {
      d = Decompose(m, y);
    } catch (const InfeasibilityError& err) {
      throw InfeasibilityError(label + ": x is not in b*P (" + err.what() +
                               ")");
    }
    states_.push_back(BuildInitialState(m, d));
    samplers_.emplace_back(states_.back(), y);
    targets_.push_back(std::move(y));
  }
}

const Matroid& PreparedScheme::matroid(int j) const {
  return is_inner(j) ? instance_->inner()[j]
                     : instance_->outer()[j - instance_->k_in()];
}

double PreparedScheme::guarantee() const {
  return 1.0 / (1.0 + b_ * (instance_->k_in() + instance_->k_out()));
}

void PreparedScheme::SampleCritical(RandomSource& rng,
                                    CriticalAssignment* out) const {
  out->resize(samplers_.size());
  for (size_t j = 0; j < samplers_.size(); ++j) {
    samplers_[j].Sample(support_, rng, &(*out)[j]);
  }
}

CriticalAssignment PreparedScheme::SampleCritical(RandomSource& rng) const {
  CriticalAssignment c;
  SampleCritical(rng, &c);
  return c;
}

SchemeRun PreparedScheme::Run(ElementSet a, RandomSource& rng,
                              const RunOptions& options) const {
  SchemeWorkspace workspace;
  return Run(a, rng, options, workspace);
}

namespace {

[[noreturn]] void Violation(long pick, const std::string& what) {
  throw InvariantViolation("step " + std::to_string(pick) + ": " + what);
}

}  // namespace

SchemeRun PreparedScheme::Run(ElementSet a, RandomSource& rng,
                              const RunOptions& options,
                              SchemeWorkspace& ws) const {
  const int n = instance_->size();
  if (!a.SubsetOf(ElementSet::Full(n))) {
    throw InputDomainError("input set outside the ground set");
  }
  const auto& p = instance_->p();
  const int k_in = instance_->k_in();
  const int total = num_matroids();

  ws.states.resize(total);
  for (int j = 0; j < total; ++j) ws.states[j] = states_[j];
  const CriticalAssignment* critical = options.critical;
  if (critical == nullptr) {
    SampleCritical(rng, &ws.critical);
    critical = &ws.critical;
  } else if (static_cast<int>(critical->size()) != total) {
    throw InputDomainError("critical assignment has the wrong matroid count");
  }
  const CriticalAssignment& c = *critical;

  SchemeRun run;
  run.input = a & support_;
  run.critical = c;
  ws.elements = run.input.ToVector();
  const int size = static_cast<int>(ws.elements.size());
  ElementSet available = run.input;
  if (options.record_process) {
    run.availability.push_back(available);
    run.probed.push_back(ElementSet());
  }

  std::vector<std::vector<ElementSet>> gamma_before;
  std::vector<int> changed;
  const SubmodularFunction* prune = options.prune;

  while (!available.Empty()) {
    const int e = ws.elements[rng.UniformInt(size)];
    ++run.picks;
    const bool was_available = available.Contains(e);
    bool success;
    if (was_available) {
      available.Erase(e);
      const ElementSet current = run.output | run.virt;
      const bool forced = e == options.force_active;
      if (prune != nullptr && prune->Marginal(current, e) < 0.0) {
        success = forced || rng.Bernoulli(p[e]);
        run.trace.RecordSimulation(e, success);
        if (success) {
          run.virt.Insert(e);
          run.added.push_back(e);
        }
      } else {
        success = forced || rng.Bernoulli(p[e]);
        run.trace.RecordProbe(e, success);
        if (success) {
          run.output.Insert(e);
          run.added.push_back(e);
        }
      }
    } else {
      success = rng.Bernoulli(p[e]);
    }

    if (options.check_invariants) {
      gamma_before.resize(total);
      for (int j = 0; j < total; ++j) {
        gamma_before[j] = AllBlockingSets(ws.states[j], c[j]);
      }
    }

    ElementSet blocked;
    for (int j = 0; j < total; ++j) {
      const bool inner = j < k_in;
      if (inner && !success) continue;
      changed.clear();
      blocked = blocked | UpdateState(ws.states[j], c[j], e,
                                      inner ? was_available : true,
                                      options.check_invariants ? &changed
                                                               : nullptr);
      if (options.check_invariants) {
        const Matroid& m = matroid(j);
        if (auto err = CheckSupport(ws.states[j], m)) Violation(run.picks, *err);
        if (auto err = CheckProperty1(ws.states[j])) Violation(run.picks, *err);
        if (auto err = CheckProperty2(ws.states[j], m, &changed)) {
          Violation(run.picks, *err);
        }
      }
    }
    const ElementSet newly = blocked & available;
    run.blocked += newly.Size();
    available = available - newly;

    if (options.check_invariants) {
      for (int j = 0; j < total; ++j) {
        const auto after = AllBlockingSets(ws.states[j], c[j]);
        if (auto err = CheckProperty3(gamma_before[j], after, available)) {
          Violation(run.picks, *err);
        }
      }
      if (!instance_->InnerIndependent(run.output | run.virt)) {
        Violation(run.picks, "accepted set is dependent in an inner matroid");
      }
      if (!instance_->OuterIndependent(run.trace.queried() | run.trace.simulated())) {
        Violation(run.picks, "probed set is dependent in an outer matroid");
      }
    }
    if (options.record_process) {
      run.availability.push_back(available);
      run.probed.push_back(run.trace.queried() | run.trace.simulated());
    }
    if (options.observer) {
      options.observer({run.picks, e, was_available, success, available,
                        &ws.states, &c});
    }
  }

  if (options.check_invariants) {
    std::string why;
    if (!ReplayFeasible(*instance_, run.trace, &why)) Violation(run.picks, why);
    if (!run.output.SubsetOf(run.input)) {
      Violation(run.picks, "output leaves the input set");
    }
  }
  return run;
}

ElementSet RunScheme(const ProbingInstance& instance, std::span<const double> x,
                     ElementSet a, double b, RandomSource& rng) {
  PreparedScheme scheme(instance, std::vector<double>(x.begin(), x.end()), b);
  return scheme.Run(a, rng).output;
}

SchemeRun RunSchemeWithPruning(const PreparedScheme& scheme,
                               const SubmodularFunction& f, RandomSource& rng) {
  const ElementSet a = SampleROfX(scheme.x(), rng);
  RunOptions options;
  options.prune = &f;
  return scheme.Run(a, rng, options);
}

BlockingProfile ComputeBlocking(const PreparedScheme& scheme,
                                const CriticalAssignment& c) {
  const int n = scheme.instance().size();
  BlockingProfile profile;
  profile.inner.assign(n, ElementSet());
  profile.outer.assign(n, ElementSet());
  for (int j = 0; j < scheme.num_matroids(); ++j) {
    const auto gamma = AllBlockingSets(scheme.initial_state(j), c[j]);
    auto& target = scheme.is_inner(j) ? profile.inner : profile.outer;
    for (int e = 0; e < n; ++e) target[e] = target[e] | gamma[e];
  }
  for (int e = 0; e < n; ++e) profile.inner[e] = profile.inner[e] - profile.outer[e];
  return profile;
}

double ConditionalProbeProbability(const PreparedScheme& scheme,
                                   const CriticalAssignment& c, ElementSet a,
                                   int e) {
  const ElementSet input = a & scheme.support();
  if (!input.Contains(e)) return 0.0;
  const auto& p = scheme.instance().p();
  const BlockingProfile profile = ComputeBlocking(scheme, c);
  double denom = 1.0;
  for (int f : profile.inner[e] & input) denom += p[f];
  denom += (profile.outer[e] & input).Size();
  return p[e] / denom;
}

// --- Composition ------------------------------------------------------

std::vector<int> CrScheme::Order(int, RandomSource&) const {
  throw CapabilityError("scheme " + Describe() + " is not ordered");
}

bool CrScheme::Accepts(ElementSet, int) const {
  throw CapabilityError("scheme " + Describe() + " is not ordered");
}

ElementSet AcceptAllScheme::Apply(ElementSet a, RandomSource&) const {
  return a;
}

std::vector<int> AcceptAllScheme::Order(int n, RandomSource&) const {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

std::vector<int> RandomOrderGreedyScheme::Order(int n,
                                                RandomSource& rng) const {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Fisher-Yates with the unbiased bounded draw.
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.UniformInt(i + 1)]);
  return order;
}

ElementSet RandomOrderGreedyScheme::Apply(ElementSet a,
                                          RandomSource& rng) const {
  ElementSet accepted;
  for (int e : Order(m_.ground_size(), rng)) {
    if (a.Contains(e) && Accepts(accepted, e)) accepted.Insert(e);
  }
  return accepted;
}

CombinedScheme::CombinedScheme(const CrScheme& outer, const CrScheme& inner)
    : outer_(outer), inner_(inner) {
  if (!inner.ordered()) {
    throw CapabilityError("inner scheme " + inner.Describe() +
                          " is not an ordered CR scheme");
  }
}

CombinedRun CombinedScheme::Run(ElementSet a, std::span<const double> p,
                                RandomSource& rng, int force_active) const {
  CombinedRun run;
  run.outer_set = outer_.Apply(a, rng);
  for (int e : inner_.Order(static_cast<int>(p.size()), rng)) {
    if (!a.Contains(e) || !inner_.Accepts(run.accepted, e)) continue;
    const bool active = e == force_active || rng.Bernoulli(p[e]);
    if (run.outer_set.Contains(e)) {
      run.trace.RecordProbe(e, active);
      if (active) run.output.Insert(e);
    } else {
      run.trace.RecordSimulation(e, active);
    }
    if (active) run.accepted.Insert(e);
  }
  return run;
}

}  // namespace probing
