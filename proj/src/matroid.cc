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

#include "probing/matroid.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "probing/errors.h"
#include "probing/lp.h"

namespace probing {

bool BipartiteGraph::HasEdge(int element, int vertex) const {
  const auto& adj = adjacency[element];
  return std::binary_search(adj.begin(), adj.end(), vertex);
}

namespace {

bool Augment(const BipartiteGraph& g, int e, std::vector<char>& visited,
             std::vector<int>& owner, std::vector<int>& match) {
  for (int v : g.adjacency[e]) {
    if (visited[v]) continue;
    visited[v] = 1;
    if (owner[v] < 0 || Augment(g, owner[v], visited, owner, match)) {
      owner[v] = e;
      match[e] = v;
      return true;
    }
  }
  return false;
}

void CheckGround(int n, ElementSet s) {
  if (!s.SubsetOf(ElementSet::Full(n))) {
    throw InputDomainError("set " + s.ToString() +
                           " is not within the ground set of size " +
                           std::to_string(n));
  }
}

void CheckSize(int n) {
  if (n < 0 || n > kMaxElements) {
    throw CapabilityError("ground set size " + std::to_string(n) +
                          " outside [0, 64]");
  }
}

}  // namespace

std::vector<int> MaxBipartiteMatching(const BipartiteGraph& graph,
                                      ElementSet subset) {
  std::vector<int> match(graph.num_elements, -1);
  std::vector<int> owner(graph.num_vertices, -1);
  std::vector<char> visited(graph.num_vertices, 0);
  for (int e : subset) {
    std::fill(visited.begin(), visited.end(), 0);
    Augment(graph, e, visited, owner, match);
  }
  return match;
}

Matroid Matroid::Transversal(int n, int num_vertices,
                             const std::vector<std::pair<int, int>>& edges) {
  CheckSize(n);
  if (num_vertices < 0) throw InputDomainError("negative vertex count");
  Matroid m(Kind::kTransversal, n);
  BipartiteGraph g;
  g.num_elements = n;
  g.num_vertices = num_vertices;
  g.adjacency.assign(n, {});
  for (auto [e, v] : edges) {
    if (e < 0 || e >= n || v < 0 || v >= num_vertices) {
      throw InputDomainError("transversal edge (" + std::to_string(e) + "," +
                             std::to_string(v) + ") out of range");
    }
    g.adjacency[e].push_back(v);
  }
  for (auto& adj : g.adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  m.graph_ = std::move(g);
  m.BuildRankTable();
  return m;
}

namespace {

// Capacity vertices per block plus a private vertex per free element.
BipartiteGraph BlocksToGraph(int n, const std::vector<PartitionBlock>& blocks) {
  BipartiteGraph g;
  g.num_elements = n;
  g.adjacency.assign(n, {});
  ElementSet covered;
  int next = 0;
  for (const auto& block : blocks) {
    for (int e : block.elements) {
      for (int c = 0; c < block.capacity; ++c) {
        g.adjacency[e].push_back(next + c);
      }
    }
    covered = covered | block.elements;
    next += block.capacity;
  }
  for (int e = 0; e < n; ++e) {
    if (!covered.Contains(e)) g.adjacency[e].push_back(next++);
  }
  g.num_vertices = next;
  return g;
}

}  // namespace

Matroid Matroid::Uniform(int n, int rank, ElementSet subset) {
  CheckSize(n);
  CheckGround(n, subset);
  if (rank < 0) throw InputDomainError("uniform matroid rank must be >= 0");
  Matroid m(Kind::kUniform, n);
  m.blocks_ = {PartitionBlock{subset, rank}};
  m.graph_ = BlocksToGraph(n, m.blocks_);
  m.BuildRankTable();
  return m;
}

Matroid Matroid::Partition(int n, std::vector<PartitionBlock> blocks) {
  CheckSize(n);
  ElementSet seen;
  for (const auto& block : blocks) {
    CheckGround(n, block.elements);
    if (block.capacity < 0) {
      throw InputDomainError("partition capacity must be >= 0");
    }
    if (!(seen & block.elements).Empty()) {
      throw InputDomainError("partition blocks must be disjoint");
    }
    seen = seen | block.elements;
  }
  Matroid m(Kind::kPartition, n);
  m.blocks_ = std::move(blocks);
  m.graph_ = BlocksToGraph(n, m.blocks_);
  m.BuildRankTable();
  return m;
}

Matroid Matroid::Enumerated(int n, std::vector<ElementSet> family) {
  CheckSize(n);
  if (n > 16) throw CapabilityError("enumerated matroids limited to n <= 16");
  std::vector<char> member(size_t{1} << n, 0);
  for (ElementSet s : family) {
    CheckGround(n, s);
    member[s.bits()] = 1;
  }
  if (!member[0]) throw InputDomainError("family must contain the empty set");
  std::vector<ElementSet> sets;
  for (uint64_t mask = 0; mask < member.size(); ++mask) {
    if (!member[mask]) continue;
    ElementSet s(mask);
    for (int e : s) {
      if (!member[s.Without(e).bits()]) {
        throw InputDomainError("family is not downward closed at " +
                               s.ToString());
      }
    }
    sets.push_back(s);
  }
  for (ElementSet a : sets) {
    for (ElementSet b : sets) {
      if (a.Size() >= b.Size()) continue;
      bool ok = false;
      for (int e : b - a) {
        if (member[a.With(e).bits()]) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        throw InputDomainError("exchange axiom fails for " + a.ToString() +
                               " and " + b.ToString());
      }
    }
  }
  Matroid m(Kind::kEnumerated, n);
  m.family_ = std::move(sets);
  m.BuildRankTable();
  return m;
}

int Matroid::ComputeRank(ElementSet s) const {
  switch (kind_) {
    case Kind::kTransversal: {
      auto match = MaxBipartiteMatching(*graph_, s);
      int r = 0;
      for (int e : s) r += match[e] >= 0;
      return r;
    }
    case Kind::kUniform:
    case Kind::kPartition: {
      int r = 0;
      ElementSet covered;
      for (const auto& block : blocks_) {
        r += std::min((s & block.elements).Size(), block.capacity);
        covered = covered | block.elements;
      }
      return r + (s - covered).Size();
    }
    case Kind::kEnumerated: {
      int r = 0;
      for (ElementSet t : family_) {
        if (t.SubsetOf(s)) r = std::max(r, t.Size());
      }
      return r;
    }
  }
  return 0;
}

void Matroid::BuildRankTable() {
  if (n_ > kExactCap) return;
  rank_table_.assign(size_t{1} << n_, 0);
  for (uint64_t mask = 0; mask < rank_table_.size(); ++mask) {
    rank_table_[mask] = ComputeRank(ElementSet(mask));
  }
}

bool Matroid::IsIndependent(ElementSet s) const {
  CheckGround(n_, s);
  if (!rank_table_.empty()) return rank_table_[s.bits()] == s.Size();
  switch (kind_) {
    case Kind::kUniform:
    case Kind::kPartition:
      for (const auto& block : blocks_) {
        if ((s & block.elements).Size() > block.capacity) return false;
      }
      return true;
    default:
      return ComputeRank(s) == s.Size();
  }
}

int Matroid::Rank(ElementSet s) const {
  CheckGround(n_, s);
  if (!rank_table_.empty()) return rank_table_[s.bits()];
  return ComputeRank(s);
}

bool Matroid::InPolytope(std::span<const double> y, double tol,
                         ElementSet* violated) const {
  if (static_cast<int>(y.size()) != n_) {
    throw InputDomainError("point dimension does not match ground set");
  }
  for (double v : y) {
    if (!(v >= -tol)) {
      throw InputDomainError("polytope membership needs y >= 0");
    }
  }
  if (n_ > kMembershipCap) {
    throw CapabilityError("polytope membership limited to n <= 20");
  }
  const uint64_t count = uint64_t{1} << n_;
  std::vector<double> sums(count, 0.0);
  for (uint64_t mask = 1; mask < count; ++mask) {
    const int low = std::countr_zero(mask);
    sums[mask] = sums[mask & (mask - 1)] + y[low];
    if (sums[mask] <= tol) continue;
    ElementSet s(mask);
    if (sums[mask] > Rank(s) + tol) {
      if (violated) *violated = s;
      return false;
    }
  }
  return true;
}

std::vector<ElementSet> Matroid::IndependentSets() const {
  if (n_ > kExactCap) {
    throw CapabilityError("independent set enumeration limited to n <= 12");
  }
  std::vector<ElementSet> out;
  for (uint64_t mask = 0; mask < (uint64_t{1} << n_); ++mask) {
    if (rank_table_[mask] == std::popcount(mask)) out.emplace_back(mask);
  }
  return out;
}

const BipartiteGraph& Matroid::TransversalGraph() const {
  if (!graph_) {
    throw CapabilityError("matroid " + Describe() +
                          " has no bipartite representation");
  }
  return *graph_;
}

std::string Matroid::Describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kTransversal: {
      int edges = 0;
      for (const auto& adj : graph_->adjacency) edges += adj.size();
      os << "transversal(n=" << n_ << ",vertices=" << graph_->num_vertices
         << ",edges=" << edges << ")";
      break;
    }
    case Kind::kUniform:
      os << "uniform(n=" << n_ << ",rank=" << blocks_[0].capacity
         << ",subset=" << blocks_[0].elements.ToString() << ")";
      break;
    case Kind::kPartition:
      os << "partition(n=" << n_ << ",blocks=" << blocks_.size() << ")";
      break;
    case Kind::kEnumerated:
      os << "enumerated(n=" << n_ << ",sets=" << family_.size() << ")";
      break;
  }
  return os.str();
}

std::vector<double> ConvexDecomposition::Resum(int n) const {
  std::vector<double> y(n, 0.0);
  for (const auto& term : terms) {
    for (int e : term.set) y[e] += term.weight;
  }
  return y;
}

double ConvexDecomposition::TotalWeight() const {
  double w = 0.0;
  for (const auto& term : terms) w += term.weight;
  return w;
}

namespace {

constexpr double kSweepMinLength = 1e-12;

// Lays each block's elements end to end on [0, sum y) and cuts the unit
// interval at every fractional endpoint. For theta in [0,1) the set is every
// element whose segment contains theta + k for some integer k; a segment of
// length <= 1 contains at most one such point, so each element appears with
// probability y_e and a block of total mass <= c holds at most c elements.
ConvexDecomposition SweepDecompose(const Matroid& m, std::span<const double> y) {
  const int n = m.ground_size();
  std::vector<PartitionBlock> blocks = m.blocks();
  ElementSet covered;
  for (const auto& block : blocks) covered = covered | block.elements;
  for (int e = 0; e < n; ++e) {
    if (!covered.Contains(e)) blocks.push_back({ElementSet::Single(e), 1});
  }

  struct Segment {
    int element;
    double start;
    double end;
  };
  std::vector<Segment> segments;
  std::vector<double> cuts = {0.0, 1.0};
  for (const auto& block : blocks) {
    double pos = 0.0;
    for (int e : block.elements) {
      const double len = std::clamp(y[e], 0.0, 1.0);
      if (len <= 0.0) continue;
      segments.push_back({e, pos, pos + len});
      cuts.push_back(pos - std::floor(pos));
      cuts.push_back((pos + len) - std::floor(pos + len));
      pos += len;
    }
  }
  std::sort(cuts.begin(), cuts.end());

  std::map<uint64_t, double> weights;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    if (hi - lo <= kSweepMinLength) continue;
    const double theta = 0.5 * (lo + hi);
    ElementSet s;
    for (const auto& seg : segments) {
      const double k = std::ceil(seg.start - theta);
      if (theta + k < seg.end) s.Insert(seg.element);
    }
    if (!m.IsIndependent(s)) {
      // Only tolerance-level overshoot of a block's capacity may do this.
      if (hi - lo > 1e-8) {
        throw InvariantViolation("sweep produced a dependent set " +
                                 s.ToString());
      }
      continue;
    }
    weights[s.bits()] += hi - lo;
  }

  ConvexDecomposition d;
  double total = 0.0;
  for (auto [bits, w] : weights) total += w;
  for (auto [bits, w] : weights) {
    d.terms.push_back({w / total, ElementSet(bits)});
  }
  return d;
}

ConvexDecomposition LpDecompose(const Matroid& m, std::span<const double> y) {
  const int n = m.ground_size();
  if (n > kExactCap) {
    throw CapabilityError("LP decomposition limited to n <= 12");
  }
  ElementSet support;
  for (int e = 0; e < n; ++e) {
    if (y[e] > 0.0) support.Insert(e);
  }
  std::vector<ElementSet> columns;
  for (ElementSet s : m.IndependentSets()) {
    if (s.SubsetOf(support)) columns.push_back(s);
  }
  const int cols = static_cast<int>(columns.size());
  LinearProgram lp(cols);
  for (int e = 0; e < n; ++e) {
    std::vector<double> row(cols, 0.0);
    for (int j = 0; j < cols; ++j) row[j] = columns[j].Contains(e) ? 1.0 : 0.0;
    lp.AddRow(std::move(row), RowSense::kEqual, std::max(0.0, y[e]));
  }
  lp.AddRow(std::vector<double>(cols, 1.0), RowSense::kEqual, 1.0);
  LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw InfeasibilityError("no convex decomposition exists for the point");
  }
  ConvexDecomposition d;
  double total = 0.0;
  for (int j = 0; j < cols; ++j) {
    if (sol.x[j] > 1e-13) {
      d.terms.push_back({sol.x[j], columns[j]});
      total += sol.x[j];
    }
  }
  for (auto& term : d.terms) term.weight /= total;
  return d;
}

}  // namespace

ConvexDecomposition Decompose(const Matroid& m, std::span<const double> y) {
  const int n = m.ground_size();
  if (static_cast<int>(y.size()) != n) {
    throw InputDomainError("point dimension does not match ground set");
  }
  for (double v : y) {
    if (v > 1.0 + 1e-9) {
      throw InfeasibilityError("coordinate " + std::to_string(v) +
                               " exceeds 1");
    }
  }
  if (n <= kMembershipCap) {
    ElementSet violated;
    if (!m.InPolytope(y, 1e-9, &violated)) {
      double sum = 0.0;
      for (int e : violated) sum += y[e];
      throw InfeasibilityError(
          "point violates rank constraint on " + violated.ToString() +
          ": sum " + std::to_string(sum) + " > rank " +
          std::to_string(m.Rank(violated)));
    }
  }
  if (m.kind() == Matroid::Kind::kUniform ||
      m.kind() == Matroid::Kind::kPartition) {
    return SweepDecompose(m, y);
  }
  return LpDecompose(m, y);
}

bool IsValidDecomposition(const Matroid& m, const ConvexDecomposition& d,
                          std::span<const double> y, double tol) {
  const int n = m.ground_size();
  for (const auto& term : d.terms) {
    if (term.weight < -tol || !m.IsIndependent(term.set)) return false;
  }
  if (std::abs(d.TotalWeight() - 1.0) > tol) return false;
  auto sum = d.Resum(n);
  for (int e = 0; e < n; ++e) {
    if (std::abs(sum[e] - y[e]) > tol) return false;
  }
  return true;
}

}  // namespace probing
