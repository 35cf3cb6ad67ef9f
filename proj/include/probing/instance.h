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


// The probing model: ground set, activation probabilities, inner and outer
// matroid constraints, objective, and the record of a probing run.

#ifndef PROBING_INSTANCE_H_
#define PROBING_INSTANCE_H_

#include <span>
#include <string>
#include <vector>

#include "probing/element_set.h"
#include "probing/matroid.h"
#include "probing/random.h"
#include "probing/submodular.h"

namespace probing {

class ProbingInstance {
 public:
  // `order` is the fixed element order used for pruning; empty means
  // 0..n-1. All matroids and the objective must share the ground set.
  ProbingInstance(std::vector<double> p, std::vector<Matroid> inner,
                  std::vector<Matroid> outer, SubmodularFunction objective,
                  std::vector<int> order = {});

  int size() const { return static_cast<int>(p_.size()); }
  const std::vector<double>& p() const { return p_; }
  const std::vector<Matroid>& inner() const { return inner_; }
  const std::vector<Matroid>& outer() const { return outer_; }
  const SubmodularFunction& objective() const { return objective_; }
  const std::vector<int>& order() const { return order_; }
  int k_in() const { return static_cast<int>(inner_.size()); }
  int k_out() const { return static_cast<int>(outer_.size()); }

  bool InnerIndependent(ElementSet s) const;
  bool OuterIndependent(ElementSet s) const;

 private:
  std::vector<double> p_;
  std::vector<Matroid> inner_;
  std::vector<Matroid> outer_;
  SubmodularFunction objective_;
  std::vector<int> order_;
};

enum class ProbeOutcome {
  kActive,
  kInactive,
  kSimulatedActive,
  kSimulatedInactive,
};

std::string ToString(ProbeOutcome outcome);

struct ProbeRecord {
  int element = 0;
  ProbeOutcome outcome = ProbeOutcome::kInactive;
};

// Q is every really probed element, S the active ones among them.
class ProbeTrace {
 public:
  void RecordProbe(int e, bool active);
  void RecordSimulation(int e, bool active);

  const std::vector<ProbeRecord>& probed() const { return probed_; }
  ElementSet queried() const { return queried_; }
  ElementSet successes() const { return successes_; }
  ElementSet simulated() const { return simulated_; }

 private:
  std::vector<ProbeRecord> probed_;
  ElementSet queried_;
  ElementSet successes_;
  ElementSet simulated_;
};

// Re-checks every prefix of the trace: Q independent in all outer
// matroids, S in all inner ones, S within Q, simulations disjoint from Q.
// On failure `why` describes the first problem.
bool ReplayFeasible(const ProbingInstance& instance, const ProbeTrace& trace,
                    std::string* why = nullptr);

// R(x): each element independently with probability x_e.
ElementSet SampleROfX(std::span<const double> x, RandomSource& rng);

// act(S): each element of S kept independently with probability p_e.
ElementSet SampleActive(ElementSet subset, std::span<const double> p,
                        RandomSource& rng);

// A coin with probability p_e; nothing is recorded as probed.
bool SimulateProbe(int e, std::span<const double> p, RandomSource& rng);

// Throws InputDomainError unless x has dimension n and lies in [0,1]^n.
void CheckUnitPoint(std::span<const double> x, int n, const char* what);

}  // namespace probing

#endif  // PROBING_INSTANCE_H_
