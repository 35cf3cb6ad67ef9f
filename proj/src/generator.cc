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


#include "probing/generator.h"

#include <algorithm>
#include <sstream>

#include "probing/errors.h"

namespace probing {

namespace {

double UniformIn(RandomSource& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.Uniform();
}

// k distinct values from [0, n) in increasing order.
std::vector<int> Choose(int n, int k, RandomSource& rng) {
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  for (int i = 0; i < k; ++i) std::swap(all[i], all[i + rng.UniformInt(n - i)]);
  std::vector<int> out(all.begin(), all.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

Matroid RandomTransversal(const GeneratorSpec& spec, RandomSource& rng) {
  const int n = spec.n;
  const int lo = std::max(1, n / 3);
  const int v = spec.vertices >= 0 ? spec.vertices
                                   : lo + rng.UniformInt(n - lo + 1);
  if (v == 0) throw ConfigError("transversal matroids need at least 1 vertex");
  std::vector<std::pair<int, int>> edges;
  for (int e = 0; e < n; ++e) {
    const int degree = 1 + rng.UniformInt(std::min(2, v));
    for (int u : Choose(v, degree, rng)) edges.emplace_back(e, u);
  }
  Matroid m = Matroid::Transversal(n, v, edges);
  // Every element has an edge, so the rank is positive; check anyway.
  if (m.Rank(ElementSet::Full(n)) == 0) {
    throw InvariantViolation("generated transversal matroid has rank 0");
  }
  return m;
}

Matroid RandomMatroid(const GeneratorSpec& spec, int index, RandomSource& rng) {
  std::string shape = spec.shape;
  if (shape == "mixed") {
    static const char* kShapes[] = {"transversal", "uniform", "partition"};
    shape = kShapes[index % 3];
  }
  const int n = spec.n;
  if (shape == "transversal") return RandomTransversal(spec, rng);
  if (shape == "uniform") {
    return Matroid::Uniform(n, 1 + rng.UniformInt(std::max(1, n / 2)));
  }
  if (shape == "partition") {
    const int num_blocks = 1 + rng.UniformInt(std::max(1, n / 2));
    std::vector<PartitionBlock> blocks(num_blocks);
    for (int e = 0; e < n; ++e) blocks[rng.UniformInt(num_blocks)].elements.Insert(e);
    for (auto& b : blocks) b.capacity = 1 + rng.UniformInt(2);
    return Matroid::Partition(n, std::move(blocks));
  }
  throw ConfigError("unknown matroid shape '" + spec.shape + "'");
}

SubmodularFunction RandomCoverage(int n, RandomSource& rng) {
  const int items = n + 2;
  std::vector<double> weights(items);
  for (double& w : weights) w = UniformIn(rng, 0.5, 2.0);
  std::vector<std::vector<int>> covers(n);
  for (int e = 0; e < n; ++e) {
    covers[e] = Choose(items, 1 + rng.UniformInt(3), rng);
  }
  return SubmodularFunction::Coverage(n, std::move(weights), std::move(covers));
}

SubmodularFunction RandomCut(int n, bool directed, RandomSource& rng) {
  std::vector<CutEdge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v || (!directed && v < u)) continue;
      if (rng.Bernoulli(0.4)) edges.push_back({u, v, UniformIn(rng, 0.5, 1.5)});
    }
  }
  return SubmodularFunction::Cut(n, std::move(edges), directed);
}

SubmodularFunction RandomObjective(const GeneratorSpec& spec,
                                   RandomSource& rng) {
  const int n = spec.n;
  if (spec.objective == "linear") {
    std::vector<double> w(n);
    for (double& v : w) v = UniformIn(rng, 0.5, 2.0);
    return SubmodularFunction::Linear(std::move(w));
  }
  if (spec.objective == "coverage") return RandomCoverage(n, rng);
  if (spec.objective == "cut") return RandomCut(n, false, rng);
  if (spec.objective == "nonmonotone") {
    if (n > 16) throw ConfigError("nonmonotone tables limited to n <= 16");
    const SubmodularFunction cover = RandomCoverage(n, rng);
    const SubmodularFunction cut = RandomCut(n, true, rng);
    std::vector<double> table = cover.ValueTable();
    const std::vector<double> cut_table = cut.ValueTable();
    // Scale the cut so that it dominates some marginals.
    for (size_t mask = 0; mask < table.size(); ++mask) {
      table[mask] += 1.5 * cut_table[mask];
    }
    return SubmodularFunction::Table(n, std::move(table));
  }
  throw ConfigError("unknown objective family '" + spec.objective + "'");
}

}  // namespace

GeneratorSpec ParseGeneratorSpec(const std::string& text) {
  GeneratorSpec spec;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("generator spec item '" + item + "' lacks '='");
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "n") {
        spec.n = std::stoi(value);
      } else if (key == "k_in") {
        spec.k_in = std::stoi(value);
      } else if (key == "k_out") {
        spec.k_out = std::stoi(value);
      } else if (key == "vertices") {
        spec.vertices = std::stoi(value);
      } else if (key == "shape") {
        spec.shape = value;
      } else if (key == "objective") {
        spec.objective = value;
      } else if (key == "p") {
        const auto colon = value.find(':');
        spec.p_min = std::stod(value.substr(0, colon));
        spec.p_max = colon == std::string::npos
                         ? spec.p_min
                         : std::stod(value.substr(colon + 1));
      } else {
        throw ConfigError("unknown generator key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw ConfigError("bad value for generator key '" + key + "'");
    }
  }
  return spec;
}

ProbingInstance GenerateInstance(const GeneratorSpec& spec, RandomSource& rng) {
  if (spec.n < 1 || spec.n > kMaxElements) {
    throw ConfigError("generator needs 1 <= n <= 64");
  }
  if (spec.k_in < 0 || spec.k_out < 0 || spec.k_in + spec.k_out > 8) {
    throw ConfigError("generator needs 0 <= k_in, k_out and k_in + k_out <= 8");
  }
  if (!(spec.p_min >= 0.0 && spec.p_min <= spec.p_max && spec.p_max <= 1.0)) {
    throw ConfigError("generator needs 0 <= p_min <= p_max <= 1");
  }
  if (spec.p_max == 0.0) throw ConfigError("every p would be 0");
  std::vector<double> p(spec.n);
  for (double& v : p) v = UniformIn(rng, spec.p_min, spec.p_max);
  std::vector<Matroid> inner, outer;
  for (int i = 0; i < spec.k_in; ++i) inner.push_back(RandomMatroid(spec, i, rng));
  for (int i = 0; i < spec.k_out; ++i) {
    outer.push_back(RandomMatroid(spec, spec.k_in + i, rng));
  }
  return ProbingInstance(std::move(p), std::move(inner), std::move(outer),
                         RandomObjective(spec, rng));
}

KSetInstance GenerateKSet(int n, int d, int k, RandomSource& rng) {
  if (n < 1 || d < 1 || k < 1 || k > d) {
    throw ConfigError("k-set generator needs n, d >= 1 and 1 <= k <= d");
  }
  std::vector<int> capacity(d);
  for (int& b : capacity) b = 1 + rng.UniformInt(2);
  std::vector<KSetColumn> columns(n);
  for (auto& col : columns) {
    col.coords = ElementSet::Of(Choose(d, k, rng));
    const std::vector<int> coords = col.coords.ToVector();
    const int num = 2 + rng.UniformInt(3);
    double total = 0.0;
    for (int i = 0; i < num; ++i) {
      KSetOutcome out;
      out.probability = UniformIn(rng, 0.2, 1.0);
      total += out.probability;
      for (int j : coords) {
        if (rng.Bernoulli(0.6)) out.size.Insert(j);
      }
      // Smaller sizes are sometimes worth more, so value is not monotone.
      out.value = UniformIn(rng, 0.2, 1.0) *
                  (1.0 + (k - out.size.Size()) * rng.Uniform());
      col.outcomes.push_back(out);
    }
    for (auto& out : col.outcomes) out.probability /= total;
  }
  return KSetInstance(std::move(capacity), std::move(columns));
}

MatchingInstance GenerateMatching(int left, int right, double density,
                                  RandomSource& rng) {
  if (left < 1 || right < 1 || !(density > 0.0 && density <= 1.0)) {
    throw ConfigError("matching generator needs nonempty sides and density in (0,1]");
  }
  std::vector<MatchingEdge> edges;
  for (int u = 0; u < left; ++u) {
    for (int v = 0; v < right; ++v) {
      if (rng.Bernoulli(density)) {
        edges.push_back({u, v, UniformIn(rng, 0.2, 1.0), UniformIn(rng, 0.5, 2.0)});
      }
    }
  }
  if (edges.empty()) edges.push_back({0, 0, UniformIn(rng, 0.2, 1.0), 1.0});
  std::vector<int> patience(left + right);
  for (int& t : patience) t = 1 + rng.UniformInt(3);
  return MatchingInstance(left, right, std::move(edges), std::move(patience));
}

}  // namespace probing
