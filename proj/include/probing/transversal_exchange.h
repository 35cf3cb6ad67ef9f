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


// Support sets with injections into the vertices of a transversal matroid,
// the transversal mappings they induce, critical-set selection, blocking
// sets and the support update applied after each pick.
//
// phi[B, A](b) = a exactly when a is matched to the vertex b is matched to,
// so the blocking set of e is every f != e whose critical set matches f to
// the same vertex that e's critical set matches e to. Updates only ever
// touch the vertex of the chosen element in its critical set, which keeps
// the blocking sets of still-available elements fixed.

#ifndef PROBING_TRANSVERSAL_EXCHANGE_H_
#define PROBING_TRANSVERSAL_EXCHANGE_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "probing/element_set.h"
#include "probing/matroid.h"
#include "probing/random.h"

namespace probing {

class SupportState {
 public:
  int num_sets() const { return static_cast<int>(beta_.size()); }
  int ground_size() const { return n_; }
  int num_vertices() const { return v_; }
  double beta(int i) const { return beta_[i]; }
  const std::vector<double>& betas() const { return beta_; }
  ElementSet set(int i) const { return sets_[i]; }

  // Vertex matched to e in B_i, or -1 when e is not in B_i.
  int VertexOf(int i, int e) const { return vertex_of_[i * n_ + e]; }
  // Element matched to vertex v in B_i, or -1.
  int ElementAt(int i, int v) const { return element_at_[i * v_ + v]; }

  void Remove(int i, int e);
  void Place(int i, int e, int v);

 private:
  friend SupportState BuildInitialState(const Matroid& m,
                                        const ConvexDecomposition& d);
  int n_ = 0;
  int v_ = 0;
  std::vector<double> beta_;
  std::vector<ElementSet> sets_;
  std::vector<int> vertex_of_;   // num_sets x n
  std::vector<int> element_at_;  // num_sets x num_vertices
};

// One injection per decomposition term, from a lowest-index augmenting-path
// matching. Throws CapabilityError for matroids without a bipartite graph
// and InvariantViolation if a term is not independent.
SupportState BuildInitialState(const Matroid& m, const ConvexDecomposition& d);

inline constexpr int kBottom = -1;

// phi[B_from, B_to](b) for b in B_from: the element of B_to matched to the
// vertex of b, or kBottom.
int MapElement(const SupportState& state, int from, int to, int b);

// Every phi[B, A] tabulated; entry (from, to, b) is -2 when b is not in
// B_from.
struct TransversalMapping {
  int num_sets = 0;
  int n = 0;
  std::vector<int> image;

  int operator()(int from, int to, int b) const {
    return image[(static_cast<size_t>(from) * num_sets + to) * n + b];
  }
};
TransversalMapping MaterializeMapping(const SupportState& state);

// Critical set index per element, -1 for elements that pick none.
using CriticalSets = std::vector<int>;

// Chooses c(e) = i with probability beta_i / y_e among the terms containing
// e, where y is the decomposed point. Throws ConsistencyError when the
// weights of the terms containing e do not sum to y_e within 1e-9.
class CriticalSampler {
 public:
  CriticalSampler(const SupportState& state, std::span<const double> y);

  // Elements outside `elements` or with y_e = 0 get -1.
  void Sample(ElementSet elements, RandomSource& rng, CriticalSets* out) const;
  CriticalSets Sample(ElementSet elements, RandomSource& rng) const {
    CriticalSets out;
    Sample(elements, rng, &out);
    return out;
  }
  // Selection probability of term i for element e.
  double Probability(int e, int i) const;

 private:
  struct Option {
    int set;
    double cumulative;
  };
  int n_ = 0;
  std::vector<std::vector<Option>> options_;
};

// Vertex matched to e in its own critical set, or -1 when e has no critical
// set or has been removed from it.
int CriticalVertex(const SupportState& state, const CriticalSets& c, int e);

// Gamma(e) = { f != e : phi[B_c(f), B_c(e)](f) = e }.
ElementSet BlockingSet(const SupportState& state, const CriticalSets& c, int e);

// Gamma(e) for every element at once.
std::vector<ElementSet> AllBlockingSets(const SupportState& state,
                                        const CriticalSets& c);

// Applies the pick of `chosen` to every support set. Let w be the vertex of
// `chosen` in its critical set (nothing happens without one). In each set
// the element b matched to w is removed unless it is `chosen` itself; with
// `insert`, `chosen` then takes w in sets that do not contain it. Returns the
// elements removed from their own critical sets (they become unavailable).
// Indices of modified sets are appended to `changed` when given.
ElementSet UpdateState(SupportState& state, const CriticalSets& c, int chosen,
                       bool insert, std::vector<int>* changed = nullptr);

// Injections valid (edges of the graph, injective, consistent) and every
// set independent. Returns a description of the first problem.
std::optional<std::string> CheckSupport(const SupportState& state,
                                        const Matroid& m);

// At most one preimage per element of A, for every ordered pair of sets.
std::optional<std::string> CheckProperty1(const SupportState& state);

// Exchange validity of phi[B, A] on B \ A. Pairs are limited to those
// involving a set listed in `sets` when it is non-null.
std::optional<std::string> CheckProperty2(const SupportState& state,
                                          const Matroid& m,
                                          const std::vector<int>* sets = nullptr);

// Gamma unchanged for every element of `available`.
std::optional<std::string> CheckProperty3(
    const std::vector<ElementSet>& before, const std::vector<ElementSet>& after,
    ElementSet available);

}  // namespace probing

#endif  // PROBING_TRANSVERSAL_EXCHANGE_H_
