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


// Stochastic k-set packing: columns with random 0/1 sizes over at most k
// coordinates, an LP relaxation, and the probing strategy that keeps one
// uniform-matroid support per coordinate.

#ifndef PROBING_KSET_H_
#define PROBING_KSET_H_

#include <span>
#include <vector>

#include "probing/element_set.h"
#include "probing/matroid.h"
#include "probing/random.h"
#include "probing/transversal_exchange.h"

namespace probing {

struct KSetOutcome {
  double probability = 0.0;
  double value = 0.0;
  ElementSet size;  // coordinates where S_e(j) = 1
};

struct KSetColumn {
  ElementSet coords;  // C_e
  std::vector<KSetOutcome> outcomes;
};

class KSetInstance {
 public:
  // Outcome sizes must lie inside the column's coordinates and the
  // probabilities of each column must sum to one.
  KSetInstance(std::vector<int> capacity, std::vector<KSetColumn> columns);

  int size() const { return static_cast<int>(columns_.size()); }
  int dims() const { return static_cast<int>(capacity_.size()); }
  // max_e |C_e|.
  int k() const { return k_; }
  const std::vector<int>& capacity() const { return capacity_; }
  const std::vector<KSetColumn>& columns() const { return columns_; }
  double ExpectedValue(int e) const { return expected_value_[e]; }
  // p_e^j = E[S_e(j)].
  double ExpectedSize(int e, int j) const {
    return expected_size_[static_cast<size_t>(e) * dims() + j];
  }
  // Outcome index drawn from column e's table.
  int SampleOutcome(int e, RandomSource& rng) const;

 private:
  std::vector<int> capacity_;
  std::vector<KSetColumn> columns_;
  std::vector<double> expected_value_;
  std::vector<double> expected_size_;
  int k_ = 0;
};

// max sum E[v_e] x_e s.t. sum_e p_e^j x_e <= b_j, 0 <= x <= 1.
std::vector<double> SolveKSetLp(const KSetInstance& instance,
                                double* value = nullptr);

struct KSetRun {
  ElementSet input;   // A
  ElementSet probed;  // the packed columns
  double value = 0.0;
  std::vector<int> load;  // per coordinate
  long picks = 0;
};

struct KSetOptions {
  // Force this column into A (for conditional estimates).
  int force_in_input = -1;
  bool check_invariants = false;
};

// Preprocessing for one x: for every coordinate j a decomposition of p^j*x
// in the uniform matroid of rank b_j over {e : j in C_e}, encoded as a
// transversal star.
class PreparedKSet {
 public:
  PreparedKSet(const KSetInstance& instance, std::vector<double> x);

  const KSetInstance& instance() const { return *instance_; }
  const std::vector<double>& x() const { return x_; }
  const Matroid& matroid(int j) const { return matroids_[j]; }
  const SupportState& initial_state(int j) const { return states_[j]; }

  // Draws A = R(x) and runs the selection loop.
  KSetRun Run(RandomSource& rng, const KSetOptions& options = {}) const;
  // Runs on a given A.
  KSetRun RunOn(ElementSet a, RandomSource& rng,
                const KSetOptions& options = {}) const;

 private:
  const KSetInstance* instance_;
  std::vector<double> x_;
  std::vector<Matroid> matroids_;
  std::vector<SupportState> states_;
  std::vector<CriticalSampler> samplers_;
};

// Optimal adaptive policy value that only probes columns whose every
// outcome fits the remaining capacity (n <= 10).
double KSetBruteForce(const KSetInstance& instance);

}  // namespace probing

#endif  // PROBING_KSET_H_
