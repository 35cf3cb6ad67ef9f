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

#ifndef PROBING_MATROID_H_
#define PROBING_MATROID_H_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "probing/element_set.h"

namespace probing {

// Left side = ground elements, right side = vertices 0..num_vertices-1.
// Adjacency lists are sorted ascending.
struct BipartiteGraph {
  int num_elements = 0;
  int num_vertices = 0;
  std::vector<std::vector<int>> adjacency;

  bool HasEdge(int element, int vertex) const;
};

// Maximum matching of `subset` into the vertices using augmenting paths.
// Elements are inserted in increasing id order and each augmenting search
// tries vertices in ascending order, so the result is a deterministic
// function of the graph and the subset. Returns the vertex matched to each
// element (-1 when unmatched or outside the subset).
std::vector<int> MaxBipartiteMatching(const BipartiteGraph& graph,
                                      ElementSet subset);

// Exact-oracle size cap: rank tables, enumerated decompositions and
// polytope LPs are only built up to this many elements.
inline constexpr int kExactCap = 12;
// Subset enumeration cap for polytope membership.
inline constexpr int kMembershipCap = 20;

struct PartitionBlock {
  ElementSet elements;
  int capacity = 0;
};

// An independence oracle over ground set {0..n-1}. Immutable once built.
class Matroid {
 public:
  enum class Kind { kTransversal, kUniform, kPartition, kEnumerated };

  // Independent sets are those that can be matched into distinct vertices.
  static Matroid Transversal(int n, int num_vertices,
                             const std::vector<std::pair<int, int>>& edges);
  // At most `rank` elements from `subset`; elements outside are free.
  static Matroid Uniform(int n, int rank, ElementSet subset);
  static Matroid Uniform(int n, int rank) {
    return Uniform(n, rank, ElementSet::Full(n));
  }
  // At most `capacity` elements per block; blocks must be disjoint and
  // elements in no block are free.
  static Matroid Partition(int n, std::vector<PartitionBlock> blocks);
  // Explicit family. Must contain the empty set and be downward closed;
  // the exchange axiom is checked too.
  static Matroid Enumerated(int n, std::vector<ElementSet> family);

  Kind kind() const { return kind_; }
  int ground_size() const { return n_; }

  bool IsIndependent(ElementSet s) const;
  int Rank(ElementSet s) const;

  // True iff y >= 0 and sum_{e in S} y_e <= rank(S) for every S (within
  // `tol`). On failure `violated` receives the offending subset.
  bool InPolytope(std::span<const double> y, double tol = 1e-9,
                  ElementSet* violated = nullptr) const;

  // Every independent set, ascending by mask (n <= kExactCap).
  std::vector<ElementSet> IndependentSets() const;

  // Bipartite representation. Uniform and partition matroids are encoded
  // with `capacity` parallel vertices per block and a private vertex for
  // each free element. Enumerated matroids throw CapabilityError.
  const BipartiteGraph& TransversalGraph() const;
  bool HasTransversalGraph() const { return graph_.has_value(); }

  // Explicit family of an enumerated matroid; empty for other kinds.
  const std::vector<ElementSet>& family() const { return family_; }

  // Uniform/partition structure; empty for other kinds.
  const std::vector<PartitionBlock>& blocks() const { return blocks_; }

  std::string Describe() const;

 private:
  Matroid(Kind kind, int n) : kind_(kind), n_(n) {}
  int ComputeRank(ElementSet s) const;
  void BuildRankTable();

  Kind kind_;
  int n_;
  std::optional<BipartiteGraph> graph_;
  std::vector<PartitionBlock> blocks_;
  std::vector<ElementSet> family_;
  std::vector<int> rank_table_;  // indexed by mask when n <= kExactCap
};

struct DecompositionTerm {
  double weight = 0.0;
  ElementSet set;
};

// y = sum_i weight_i * 1_{set_i}, weights summing to one.
struct ConvexDecomposition {
  std::vector<DecompositionTerm> terms;

  // Coordinate-wise sum of the weighted indicator vectors.
  std::vector<double> Resum(int n) const;
  double TotalWeight() const;
};

// Writes y as a convex combination of independent sets. Uniform and
// partition matroids use an exact sweep construction; other kinds solve a
// feasibility LP over the enumerated independent sets (n <= kExactCap).
// Throws InfeasibilityError naming a violated rank constraint when y is
// outside the polytope.
ConvexDecomposition Decompose(const Matroid& m, std::span<const double> y);

// Checks the decomposition invariants within `tol`: weights nonnegative and
// summing to one, sets independent, re-summation equal to y.
bool IsValidDecomposition(const Matroid& m, const ConvexDecomposition& d,
                          std::span<const double> y, double tol = 1e-9);

}  // namespace probing

#endif  // PROBING_MATROID_H_
