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


#include "probing/matching.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "probing/errors.h"
#include "probing/lp.h"

namespace probing {

MatchingInstance::MatchingInstance(int num_left, int num_right,
                                   std::vector<MatchingEdge> edges,
                                   std::vector<int> patience)
    : num_left_(num_left),
      num_right_(num_right),
      edges_(std::move(edges)),
      patience_(std::move(patience)) {
  if (num_left < 0 || num_right < 0) {
    throw InputDomainError("node counts must be nonnegative");
  }
  if (static_cast<int>(patience_.size()) != num_nodes()) {
    throw InputDomainError("need one patience value per node");
  }
  for (int t : patience_) {
    if (t < 1) throw InputDomainError("patience must be at least 1");
  }
  incident_.assign(num_nodes(), {});
  for (int e = 0; e < num_edges(); ++e) {
    const auto& edge = edges_[e];
    if (edge.left < 0 || edge.left >= num_left || edge.right < 0 ||
        edge.right >= num_right) {
      throw InputDomainError("edge " + std::to_string(e) +
                             " has an endpoint out of range");
    }
    if (!(edge.p > 0.0 && edge.p <= 1.0)) {
      throw InputDomainError("edge " + std::to_string(e) +
                             " needs p in (0,1]");
    }
    if (!(edge.w > 0.0) || !std::isfinite(edge.w)) {
      throw InputDomainError("edge " + std::to_string(e) +
                             " needs a positive weight");
    }
    const auto [u, v] = Endpoints(e);
    incident_[u].push_back(e);
    incident_[v].push_back(e);
  }
}

std::vector<std::pair<int, int>> MatchingInstance::NodePairs() const {
  std::vector<std::pair<int, int>> out;
  for (int e = 0; e < num_edges(); ++e) out.push_back(Endpoints(e));
  return out;
}

std::vector<double> SolveMatchingLp(const MatchingInstance& instance,
                                    double* value) {
  const int m = instance.num_edges();
  LinearProgram lp(m);
  for (int e = 0; e < m; ++e) {
    lp.objective[e] = instance.edges()[e].w * instance.edges()[e].p;
  }
  for (int v = 0; v < instance.num_nodes(); ++v) {
    const auto& inc = instance.Incident(v);
    if (inc.empty()) continue;
    std::vector<double> prob(m, 0.0), count(m, 0.0);
    for (int e : inc) {
      prob[e] = instance.edges()[e].p;
      count[e] = 1.0;
    }
    lp.AddRow(std::move(prob), RowSense::kLessEqual, 1.0);
    lp.AddRow(std::move(count), RowSense::kLessEqual, instance.patience()[v]);
  }
  for (int e = 0; e < m; ++e) {
    std::vector<double> row(m, 0.0);
    row[e] = 1.0;
    lp.AddRow(std::move(row), RowSense::kLessEqual, 1.0);
  }
  const LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw InvariantViolation("matching LP contains 0 and is bounded");
  }
  if (value) *value = sol.value;
  std::vector<double> x(m);
  for (int e = 0; e < m; ++e) x[e] = std::clamp(sol.x[e], 0.0, 1.0);
  return x;
}

namespace {

constexpr double kIntegral = 1e-12;

bool IsFractional(double v) { return v > kIntegral && v < 1.0 - kIntegral; }

void CheckBipartite(int num_nodes,
                    const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(num_nodes);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> color(num_nodes, -1);
  std::vector<int> stack;
  for (int s = 0; s < num_nodes; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          stack.push_back(v);
        } else if (color[v] == color[u]) {
          throw CapabilityError("dependent rounding needs a bipartite graph");
        }
      }
    }
  }
}

// Walks from `start` along unused fractional edges. Returns the edge
// sequence of a cycle (closed = true) or of the path until stuck.
std::vector<int> Walk(int start, const std::vector<std::vector<int>>& inc,
                      const std::vector<std::pair<int, int>>& edges,
                      const std::vector<double>& x, bool* closed,
                      int* end_node) {
  std::vector<int> path_edges;
  std::vector<int> nodes = {start};
  std::vector<int> position(inc.size(), -1);
  position[start] = 0;
  int node = start;
  int came_by = -1;
  while (true) {
    int next_edge = -1;
    for (int e : inc[node]) {
      if (e != came_by && IsFractional(x[e])) {
        next_edge = e;
        break;
      }
    }
    if (next_edge < 0) {
      *closed = false;
      *end_node = node;
      return path_edges;
    }
    const int other = edges[next_edge].first == node ? edges[next_edge].second
                                                     : edges[next_edge].first;
    path_edges.push_back(next_edge);
    if (position[other] >= 0) {
      *closed = true;
      return std::vector<int>(path_edges.begin() + position[other],
                              path_edges.end());
    }
    position[other] = static_cast<int>(nodes.size());
    nodes.push_back(other);
    came_by = next_edge;
    node = other;
  }
}

}  // namespace

std::vector<char> GkpsRound(int num_nodes,
                            const std::vector<std::pair<int, int>>& edges,
                            std::span<const double> x_in, RandomSource& rng) {
  const int m = static_cast<int>(edges.size());
  if (static_cast<int>(x_in.size()) != m) {
    throw InputDomainError("rounding needs one value per edge");
  }
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes || u == v) {
      throw InputDomainError("edge endpoint out of range");
    }
  }
  for (double v : x_in) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InputDomainError("rounding needs x in [0,1]");
    }
  }
  CheckBipartite(num_nodes, edges);

  std::vector<double> x(x_in.begin(), x_in.end());
  std::vector<std::vector<int>> inc(num_nodes);
  for (int e = 0; e < m; ++e) {
    inc[edges[e].first].push_back(e);
    inc[edges[e].second].push_back(e);
  }
  for (int e = 0; e < m; ++e) {
    if (!IsFractional(x[e])) x[e] = x[e] > 0.5 ? 1.0 : 0.0;
  }
  for (int first = 0; first < m; ++first) {
    while (IsFractional(x[first])) {
      bool closed = false;
      int end = -1;
      std::vector<int> walk =
          Walk(edges[first].first, inc, edges, x, &closed, &end);
      if (!closed) {
        // Restart from a dead end to get a maximal path (or a cycle).
        walk = Walk(end, inc, edges, x, &closed, &end);
      }
      // Alternate edges: even positions gain alpha, odd lose alpha; or the
      // reverse with beta.
      double alpha = 1.0, beta = 1.0;
      for (size_t i = 0; i < walk.size(); ++i) {
        const double v = x[walk[i]];
        if (i % 2 == 0) {
          alpha = std::min(alpha, 1.0 - v);
          beta = std::min(beta, v);
        } else {
          alpha = std::min(alpha, v);
          beta = std::min(beta, 1.0 - v);
        }
      }
      const bool up = rng.Uniform() * (alpha + beta) < beta;
      const double step = up ? alpha : -beta;
      for (size_t i = 0; i < walk.size(); ++i) {
        double& v = x[walk[i]];
        v += i % 2 == 0 ? step : -step;
        if (!IsFractional(v)) v = v > 0.5 ? 1.0 : 0.0;
      }
    }
  }
  std::vector<char> out(m);
  for (int e = 0; e < m; ++e) out[e] = x[e] > 0.5 ? 1 : 0;
  return out;
}

namespace {

MatchingRun Start(const MatchingInstance& instance,
                  std::span<const char> rounded) {
  if (static_cast<int>(rounded.size()) != instance.num_edges()) {
    throw InputDomainError("rounded vector needs one entry per edge");
  }
  MatchingRun run;
  run.probed.assign(instance.num_edges(), 0);
  run.matched.assign(instance.num_edges(), 0);
  return run;
}

void Probe(const MatchingInstance& instance, int e, bool active,
           std::vector<char>& node_used, std::vector<int>& probes,
           MatchingRun& run) {
  const auto [u, v] = instance.Endpoints(e);
  run.probed[e] = 1;
  ++run.num_probed;
  if (++probes[u] > instance.patience()[u] ||
      ++probes[v] > instance.patience()[v]) {
    throw InvariantViolation("patience exceeded at edge " + std::to_string(e));
  }
  if (active) {
    run.matched[e] = 1;
    run.weight += instance.edges()[e].w;
    node_used[u] = node_used[v] = 1;
  }
}

}  // namespace

MatchingRun RunMatching(const MatchingInstance& instance,
                        std::span<const char> rounded, RandomSource& rng,
                        int force_active) {
  MatchingRun run = Start(instance, rounded);
  std::vector<int> order;
  for (int e = 0; e < instance.num_edges(); ++e) {
    if (rounded[e]) order.push_back(e);
  }
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> node_used(instance.num_nodes(), 0);
  std::vector<int> probes(instance.num_nodes(), 0);
  for (int e : order) {
    const auto [u, v] = instance.Endpoints(e);
    if (node_used[u] || node_used[v]) continue;
    const bool active =
        e == force_active || rng.Bernoulli(instance.edges()[e].p);
    Probe(instance, e, active, node_used, probes, run);
  }
  return run;
}

MatchingRun RunMatchingRepick(const MatchingInstance& instance,
                              std::span<const char> rounded,
                              RandomSource& rng) {
  MatchingRun run = Start(instance, rounded);
  std::vector<char> node_used(instance.num_nodes(), 0);
  std::vector<int> probes(instance.num_nodes(), 0);
  std::vector<int> safe;
  while (true) {
    safe.clear();
    for (int e = 0; e < instance.num_edges(); ++e) {
      const auto [u, v] = instance.Endpoints(e);
      if (rounded[e] && !run.probed[e] && !node_used[u] && !node_used[v]) {
        safe.push_back(e);
      }
    }
    if (safe.empty()) break;
    const int e = safe[rng.UniformInt(static_cast<int>(safe.size()))];
    Probe(instance, e, rng.Bernoulli(instance.edges()[e].p), node_used, probes,
          run);
  }
  return run;
}

}  // namespace probing
