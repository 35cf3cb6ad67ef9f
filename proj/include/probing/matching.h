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


// Bipartite stochastic matching with patience: the edge LP, dependent
// rounding along cycles and maximal paths, and the random-order scan over
// the rounded edge set.

#ifndef PROBING_MATCHING_H_
#define PROBING_MATCHING_H_

#include <span>
#include <utility>
#include <vector>

#include "probing/random.h"

namespace probing {

struct MatchingEdge {
  int left = 0;   // node in A
  int right = 0;  // node in B
  double p = 1.0;
  double w = 1.0;
};

// Nodes are numbered 0..num_left-1 (side A) followed by side B.
class MatchingInstance {
 public:
  MatchingInstance(int num_left, int num_right, std::vector<MatchingEdge> edges,
                   std::vector<int> patience);

  int num_left() const { return num_left_; }
  int num_right() const { return num_right_; }
  int num_nodes() const { return num_left_ + num_right_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<MatchingEdge>& edges() const { return edges_; }
  const std::vector<int>& patience() const { return patience_; }
  // Global node ids of the endpoints of edge e.
  std::pair<int, int> Endpoints(int e) const {
    return {edges_[e].left, num_left_ + edges_[e].right};
  }
  // Edges incident to a global node id.
  const std::vector<int>& Incident(int node) const { return incident_[node]; }
  std::vector<std::pair<int, int>> NodePairs() const;

 private:
  int num_left_;
  int num_right_;
  std::vector<MatchingEdge> edges_;
  std::vector<int> patience_;
  std::vector<std::vector<int>> incident_;
};

// max sum w_e p_e x_e s.t. per node sum p_e x_e <= 1, sum x_e <= t_v,
// 0 <= x <= 1.
std::vector<double> SolveMatchingLp(const MatchingInstance& instance,
                                    double* value = nullptr);

// Dependent rounding: repeatedly takes a cycle or maximal path of
// fractional edges and shifts mass alternately along it. Marginals are
// preserved exactly and every node keeps at most ceil of its fractional
// degree. Throws CapabilityError when the graph is not bipartite.
std::vector<char> GkpsRound(int num_nodes,
                            const std::vector<std::pair<int, int>>& edges,
                            std::span<const double> x, RandomSource& rng);

struct MatchingRun {
  std::vector<char> probed;
  std::vector<char> matched;
  double weight = 0.0;
  int num_probed = 0;
};

// Scans the edges with rounded[e] = 1 in uniformly random order, probing
// each one whose endpoints are both still free. `force_active` conditions
// that edge's probe to succeed.
MatchingRun RunMatching(const MatchingInstance& instance,
                        std::span<const char> rounded, RandomSource& rng,
                        int force_active = -1);

// The same process written as repeated uniform picks among the currently
// safe (unprobed, both endpoints free) rounded edges.
MatchingRun RunMatchingRepick(const MatchingInstance& instance,
                              std::span<const char> rounded, RandomSource& rng);

}  // namespace probing

#endif  // PROBING_MATCHING_H_
