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


// The stoch-CR scheme for intersections of transversal matroids, with
// on-the-fly pruning, the closed-form conditional probe probability, and
// the composition of a classic outer scheme with an ordered inner scheme.

#ifndef PROBING_STOCH_CR_H_
#define PROBING_STOCH_CR_H_

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "probing/element_set.h"
#include "probing/instance.h"
#include "probing/matroid.h"
#include "probing/random.h"
#include "probing/submodular.h"
#include "probing/transversal_exchange.h"

namespace probing {

// Critical sets for every matroid, inner matroids first.
using CriticalAssignment = std::vector<CriticalSets>;

// What an observer sees after each pick.
struct StepView {
  long pick = 0;
  int element = -1;
  bool was_available = false;
  bool success = false;
  ElementSet available;
  const std::vector<SupportState>* states = nullptr;
  const CriticalAssignment* critical = nullptr;
};

struct RunOptions {
  // Fixed critical sets; sampled per run when null.
  const CriticalAssignment* critical = nullptr;
  // The real probe of this element always succeeds (conditioning on it
  // being active).
  int force_active = -1;
  // Simulate instead of probing whenever the marginal against
  // S^prun + S^virt is negative.
  const SubmodularFunction* prune = nullptr;
  // Check injections, Properties 1-3, set independence and trace
  // feasibility after every step; violations throw InvariantViolation.
  bool check_invariants = false;
  // Keep per-step availability and probe sets.
  bool record_process = false;
  // Called after every pick, for debug dumps.
  std::function<void(const StepView&)> observer;
};

struct SchemeRun {
  ElementSet input;   // A restricted to supp(x)
  ElementSet output;  // successfully probed (S, or S^prun with pruning)
  ElementSet virt;    // successful pruned simulations (S^virt)
  std::vector<int> added;  // elements of output + virt in insertion order
  ProbeTrace trace;
  CriticalAssignment critical;
  long picks = 0;
  int blocked = 0;  // elements made unavailable by someone else's pick
  // With record_process: availability and probed sets after each pick,
  // starting with the initial state.
  std::vector<ElementSet> availability;
  std::vector<ElementSet> probed;
};

// Reusable buffers for repeated runs.
struct SchemeWorkspace {
  std::vector<SupportState> states;
  CriticalAssignment critical;
  std::vector<int> elements;
};

// Preprocessing for one point x in b*P: decompositions of p*x/b for inner
// and x/b for outer matroids, injections and critical-set samplers. Runs
// share it read-only.
class PreparedScheme {
 public:
  // Throws InfeasibilityError when x is not in b*P, CapabilityError when a
  // matroid has no bipartite representation.
  PreparedScheme(const ProbingInstance& instance, std::vector<double> x,
                 double b);

  const ProbingInstance& instance() const { return *instance_; }
  const std::vector<double>& x() const { return x_; }
  double b() const { return b_; }
  ElementSet support() const { return support_; }
  int num_matroids() const { return static_cast<int>(states_.size()); }
  bool is_inner(int j) const { return j < instance_->k_in(); }
  const Matroid& matroid(int j) const;
  const SupportState& initial_state(int j) const { return states_[j]; }
  const CriticalSampler& sampler(int j) const { return samplers_[j]; }
  // The decomposed point for matroid j: p*x/b or x/b.
  const std::vector<double>& target(int j) const { return targets_[j]; }

  // 1 / (1 + b (k_in + k_out)).
  double guarantee() const;

  CriticalAssignment SampleCritical(RandomSource& rng) const;
  void SampleCritical(RandomSource& rng, CriticalAssignment* out) const;

  SchemeRun Run(ElementSet a, RandomSource& rng,
                const RunOptions& options = {}) const;
  SchemeRun Run(ElementSet a, RandomSource& rng, const RunOptions& options,
                SchemeWorkspace& workspace) const;

 private:
  const ProbingInstance* instance_;
  std::vector<double> x_;
  double b_;
  ElementSet support_;
  std::vector<std::vector<double>> targets_;
  std::vector<SupportState> states_;
  std::vector<CriticalSampler> samplers_;
};

// pi_x(A) for a fresh preparation.
ElementSet RunScheme(const ProbingInstance& instance, std::span<const double> x,
                     ElementSet a, double b, RandomSource& rng);

// Draws A = R(x) and runs with pruning against f; returns the run (output
// is S^prun, virt is S^virt).
SchemeRun RunSchemeWithPruning(const PreparedScheme& scheme,
                               const SubmodularFunction& f, RandomSource& rng);

// Blocking sets under C in the initial support: per element, the union over
// inner matroids minus the outer union, and the outer union.
struct BlockingProfile {
  std::vector<ElementSet> inner;
  std::vector<ElementSet> outer;
};
BlockingProfile ComputeBlocking(const PreparedScheme& scheme,
                                const CriticalAssignment& c);

// p_e X_e / (1 + sum_{Gamma_in} p_f X_f + sum_{Gamma_out} X_f) with X the
// indicator of A restricted to supp(x).
double ConditionalProbeProbability(const PreparedScheme& scheme,
                                   const CriticalAssignment& c, ElementSet a,
                                   int e);

// --- Composition of classic CR schemes --------------------------------

// A CR scheme maps a set A to a feasible subset. Ordered schemes accept
// greedily along a random permutation.
class CrScheme {
 public:
  virtual ~CrScheme() = default;
  virtual bool ordered() const = 0;
  virtual ElementSet Apply(ElementSet a, RandomSource& rng) const = 0;
  // For ordered schemes: the scan order and the acceptance test against the
  // currently accepted set.
  virtual std::vector<int> Order(int n, RandomSource& rng) const;
  virtual bool Accepts(ElementSet accepted, int e) const;
  virtual std::string Describe() const = 0;
};

// Returns A unchanged; ordered with the identity order.
class AcceptAllScheme : public CrScheme {
 public:
  bool ordered() const override { return true; }
  ElementSet Apply(ElementSet a, RandomSource& rng) const override;
  std::vector<int> Order(int n, RandomSource& rng) const override;
  bool Accepts(ElementSet, int) const override { return true; }
  std::string Describe() const override { return "accept-all"; }
};

// Greedy maximal independent subset along a uniformly random permutation.
class RandomOrderGreedyScheme : public CrScheme {
 public:
  explicit RandomOrderGreedyScheme(Matroid m) : m_(std::move(m)) {}
  bool ordered() const override { return true; }
  ElementSet Apply(ElementSet a, RandomSource& rng) const override;
  std::vector<int> Order(int n, RandomSource& rng) const override;
  bool Accepts(ElementSet accepted, int e) const override {
    return m_.IsIndependent(accepted.With(e));
  }
  std::string Describe() const override {
    return "random-order-greedy(" + m_.Describe() + ")";
  }
  const Matroid& matroid() const { return m_; }

 private:
  Matroid m_;
};

struct CombinedRun {
  ElementSet output;     // real successes, pi_out(A) and pi_in(act(A))
  ElementSet outer_set;  // pi_out(A)
  ElementSet accepted;   // inner greedy set over real and simulated outcomes
  ProbeTrace trace;
};

// Runs pi_out on A, then scans A in pi_in's order: elements kept by pi_out
// are probed, the others simulated, and pi_in's greedy test is applied to
// the outcomes. Throws CapabilityError when pi_in is not ordered.
class CombinedScheme {
 public:
  CombinedScheme(const CrScheme& outer, const CrScheme& inner);
  CombinedRun Run(ElementSet a, std::span<const double> p,
                  RandomSource& rng, int force_active = -1) const;

 private:
  const CrScheme& outer_;
  const CrScheme& inner_;
};

}  // namespace probing

#endif  // PROBING_STOCH_CR_H_
