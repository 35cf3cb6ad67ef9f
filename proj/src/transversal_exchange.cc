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


#include "probing/transversal_exchange.h"

#include <algorithm>
#include <cmath>

#include "probing/errors.h"

namespace probing {

void SupportState::Remove(int i, int e) {
  const int v = vertex_of_[i * n_ + e];
  if (v < 0) return;
  vertex_of_[i * n_ + e] = -1;
  element_at_[i * v_ + v] = -1;
  sets_[i].Erase(e);
}

void SupportState::Place(int i, int e, int v) {
  vertex_of_[i * n_ + e] = v;
  element_at_[i * v_ + v] = e;
  sets_[i].Insert(e);
}

SupportState BuildInitialState(const Matroid& m, const ConvexDecomposition& d) {
  const BipartiteGraph& graph = m.TransversalGraph();
  SupportState state;
  state.n_ = m.ground_size();
  state.v_ = graph.num_vertices;
  const int terms = static_cast<int>(d.terms.size());
  state.vertex_of_.assign(static_cast<size_t>(terms) * state.n_, -1);
  state.element_at_.assign(static_cast<size_t>(terms) * state.v_, -1);
  for (int i = 0; i < terms; ++i) {
    const auto& term = d.terms[i];
    state.beta_.push_back(term.weight);
    state.sets_.push_back(ElementSet());
    const auto match = MaxBipartiteMatching(graph, term.set);
    for (int e : term.set) {
      if (match[e] < 0) {
        throw InvariantViolation("support set " + term.set.ToString() +
                                 " is not independent");
      }
      state.Place(i, e, match[e]);
    }
  }
  return state;
}

int MapElement(const SupportState& state, int from, int to, int b) {
  const int v = state.VertexOf(from, b);
  if (v < 0) {
    throw InvariantViolation("mapping applied to an element outside its set");
  }
  return state.ElementAt(to, v);
}

TransversalMapping MaterializeMapping(const SupportState& state) {
  TransversalMapping map;
  map.num_sets = state.num_sets();
  map.n = state.ground_size();
  map.image.assign(static_cast<size_t>(map.num_sets) * map.num_sets * map.n,
                   -2);
  for (int from = 0; from < map.num_sets; ++from) {
    for (int to = 0; to < map.num_sets; ++to) {
      for (int b : state.set(from)) {
        map.image[(static_cast<size_t>(from) * map.num_sets + to) * map.n + b] =
            MapElement(state, from, to, b);
      }
    }
  }
  return map;
}

CriticalSampler::CriticalSampler(const SupportState& state,
                                 std::span<const double> y)
    : n_(state.ground_size()), options_(state.ground_size()) {
  if (static_cast<int>(y.size()) != n_) {
    throw InputDomainError("point dimension does not match the support");
  }
  for (int e = 0; e < n_; ++e) {
    double total = 0.0;
    for (int i = 0; i < state.num_sets(); ++i) {
      if (state.set(i).Contains(e)) total += state.beta(i);
    }
    if (std::abs(total - y[e]) > 1e-9) {
      throw ConsistencyError("element " + std::to_string(e) +
                             ": support weights sum to " +
                             std::to_string(total) + " but the point has " +
                             std::to_string(y[e]));
    }
    if (total <= 0.0) continue;
    double running = 0.0;
    for (int i = 0; i < state.num_sets(); ++i) {
      if (!state.set(i).Contains(e)) continue;
      running += state.beta(i);
      options_[e].push_back({i, running / total});
    }
    options_[e].back().cumulative = 1.0;
  }
}

void CriticalSampler::Sample(ElementSet elements, RandomSource& rng,
                             CriticalSets* out) const {
  out->assign(n_, -1);
  for (int e : elements) {
    const auto& opts = options_[e];
    if (opts.empty()) continue;
    if (opts.size() == 1) {
      (*out)[e] = opts[0].set;
      continue;
    }
    const double u = rng.Uniform();
    size_t k = 0;
    while (k + 1 < opts.size() && u >= opts[k].cumulative) ++k;
    (*out)[e] = opts[k].set;
  }
}

double CriticalSampler::Probability(int e, int i) const {
  double prev = 0.0;
  for (const auto& opt : options_[e]) {
    if (opt.set == i) return opt.cumulative - prev;
    prev = opt.cumulative;
  }
  return 0.0;
}

int CriticalVertex(const SupportState& state, const CriticalSets& c, int e) {
  const int i = c[e];
  return i < 0 ? -1 : state.VertexOf(i, e);
}

ElementSet BlockingSet(const SupportState& state, const CriticalSets& c,
                       int e) {
  ElementSet gamma;
  const int w = CriticalVertex(state, c, e);
  if (w < 0) return gamma;
  for (int f = 0; f < state.ground_size(); ++f) {
    if (f != e && CriticalVertex(state, c, f) == w) gamma.Insert(f);
  }
  return gamma;
}

std::vector<ElementSet> AllBlockingSets(const SupportState& state,
                                        const CriticalSets& c) {
  const int n = state.ground_size();
  std::vector<ElementSet> by_vertex(state.num_vertices());
  std::vector<int> vertex(n);
  for (int e = 0; e < n; ++e) {
    vertex[e] = CriticalVertex(state, c, e);
    if (vertex[e] >= 0) by_vertex[vertex[e]].Insert(e);
  }
  std::vector<ElementSet> gamma(n);
  for (int e = 0; e < n; ++e) {
    if (vertex[e] >= 0) gamma[e] = by_vertex[vertex[e]].Without(e);
  }
  return gamma;
}

ElementSet UpdateState(SupportState& state, const CriticalSets& c, int chosen,
                       bool insert, std::vector<int>* changed) {
  ElementSet blocked;
  const int w = CriticalVertex(state, c, chosen);
  // Without its critical vertex the chosen element maps to nothing in any
  // set; this only happens once it has been blocked here, and then every
  // element sharing that vertex has been blocked with it.
  if (w < 0) return blocked;
  for (int i = 0; i < state.num_sets(); ++i) {
    const int b1 = state.ElementAt(i, w);
    if (b1 == chosen) continue;  // already matched at w: nothing changes
    bool touched = false;
    if (b1 >= 0) {
      state.Remove(i, b1);
      if (c[b1] == i) blocked.Insert(b1);
      touched = true;
    }
    if (insert && !state.set(i).Contains(chosen)) {
      state.Place(i, chosen, w);
      touched = true;
    }
    if (touched && changed) changed->push_back(i);
  }
  return blocked;
}

std::optional<std::string> CheckSupport(const SupportState& state,
                                        const Matroid& m) {
  const BipartiteGraph& graph = m.TransversalGraph();
  for (int i = 0; i < state.num_sets(); ++i) {
    for (int e = 0; e < state.ground_size(); ++e) {
      const int v = state.VertexOf(i, e);
      if (v < 0) {
        if (state.set(i).Contains(e)) {
          return "set " + std::to_string(i) + " lists unmatched element " +
                 std::to_string(e);
        }
        continue;
      }
      if (!state.set(i).Contains(e) || state.ElementAt(i, v) != e) {
        return "set " + std::to_string(i) + " has an inconsistent injection";
      }
      if (!graph.HasEdge(e, v)) {
        return "set " + std::to_string(i) + " matches " + std::to_string(e) +
               " along a missing edge";
      }
    }
    if (!m.IsIndependent(state.set(i))) {
      return "set " + std::to_string(i) + " = " + state.set(i).ToString() +
             " is dependent";
    }
  }
  return std::nullopt;
}

std::optional<std::string> CheckProperty1(const SupportState& state) {
  for (int from = 0; from < state.num_sets(); ++from) {
    for (int to = 0; to < state.num_sets(); ++to) {
      ElementSet hit;
      for (int b : state.set(from)) {
        const int a = MapElement(state, from, to, b);
        if (a == kBottom) continue;
        if (hit.Contains(a)) {
          return "two preimages of " + std::to_string(a) + " under phi[" +
                 std::to_string(from) + "," + std::to_string(to) + "]";
        }
        hit.Insert(a);
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> CheckProperty2(const SupportState& state,
                                          const Matroid& m,
                                          const std::vector<int>* sets) {
  auto check_pair = [&](int from, int to) -> std::optional<std::string> {
    const ElementSet a_set = state.set(to);
    for (int b : state.set(from) - a_set) {
      const int a = MapElement(state, from, to, b);
      const ElementSet swapped = a == kBottom ? a_set.With(b)
                                              : a_set.Without(a).With(b);
      if (!m.IsIndependent(swapped)) {
        return "exchange " + swapped.ToString() + " from phi[" +
               std::to_string(from) + "," + std::to_string(to) +
               "] is dependent";
      }
    }
    return std::nullopt;
  };
  const int m_sets = state.num_sets();
  if (sets == nullptr) {
    for (int from = 0; from < m_sets; ++from) {
      for (int to = 0; to < m_sets; ++to) {
        if (auto err = check_pair(from, to)) return err;
      }
    }
    return std::nullopt;
  }
  for (int s : *sets) {
    for (int other = 0; other < m_sets; ++other) {
      if (auto err = check_pair(s, other)) return err;
      if (auto err = check_pair(other, s)) return err;
    }
  }
  return std::nullopt;
}

std::optional<std::string> CheckProperty3(
    const std::vector<ElementSet>& before, const std::vector<ElementSet>& after,
    ElementSet available) {
  for (int e : available) {
    if (before[e] != after[e]) {
      return "blocking set of " + std::to_string(e) + " changed from " +
             before[e].ToString() + " to " + after[e].ToString();
    }
  }
  return std::nullopt;
}

}  // namespace probing
