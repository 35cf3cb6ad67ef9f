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


// Nonnegative set functions with f(empty) = 0, their multilinear extension F
// and the correlated extension f+.

#ifndef PROBING_SUBMODULAR_H_
#define PROBING_SUBMODULAR_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "probing/element_set.h"
#include "probing/random.h"

namespace probing {

// Explicit value tables are kept up to this many elements.
inline constexpr int kTableCap = 20;

struct CutEdge {
  int from = 0;
  int to = 0;
  double weight = 1.0;
};

class SubmodularFunction {
 public:
  enum class Kind { kTable, kLinear, kCoverage, kCut };

  // values[mask] for every mask of an n-element ground set (n <= 20).
  static SubmodularFunction Table(int n, std::vector<double> values);
  static SubmodularFunction Linear(std::vector<double> weights);
  // Element e covers items covers[e]; the value is the total weight of
  // covered items.
  static SubmodularFunction Coverage(int n, std::vector<double> item_weights,
                                     std::vector<std::vector<int>> covers);
  // Weight of edges leaving S (directed) or crossing S (undirected).
  static SubmodularFunction Cut(int n, std::vector<CutEdge> edges,
                                bool directed);

  Kind kind() const { return kind_; }
  int ground_size() const { return n_; }

  double Value(ElementSet s) const;
  double operator()(ElementSet s) const { return Value(s); }

  // f(S + e) - f(S).
  double Marginal(ElementSet s, int e) const {
    return Value(s.With(e)) - Value(s);
  }

  // All 2^n values indexed by mask (n <= kTableCap).
  std::vector<double> ValueTable() const;

  // Structure accessors for serialization.
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& item_weights() const { return item_weights_; }
  const std::vector<std::vector<int>>& covers() const { return covers_; }
  const std::vector<CutEdge>& cut_edges() const { return edges_; }
  bool directed() const { return directed_; }

  std::string Describe() const;

 private:
  SubmodularFunction(Kind kind, int n) : kind_(kind), n_(n) {}
  double Evaluate(ElementSet s) const;
  void Finish();

  Kind kind_;
  int n_;
  std::vector<double> weights_;
  std::vector<double> item_weights_;
  std::vector<std::vector<int>> covers_;
  std::vector<uint64_t> cover_masks_;  // per element, items covered (<= 64)
  std::vector<CutEdge> edges_;
  bool directed_ = false;
  std::vector<double> table_;  // cached when n is small
};

// Witness (S, a, b) with f(S+a) + f(S+b) < f(S+a+b) + f(S) - tol, if any.
// Exhaustive, so intended for n <= 12.
struct SubmodularityViolation {
  ElementSet base;
  int a = 0;
  int b = 0;
  double excess = 0.0;
};
std::optional<SubmodularityViolation> FindSubmodularityViolation(
    const SubmodularFunction& f, double tol = 1e-9);

bool IsMonotone(const SubmodularFunction& f, double tol = 1e-12);

// F(y) = sum_A f(A) prod_{e in A} y_e prod_{e not in A} (1 - y_e).
double MultilinearExact(const SubmodularFunction& f, std::span<const double> y);

// Same sum over a precomputed value table; avoids re-evaluating f.
double MultilinearFromTable(std::span<const double> table,
                            std::span<const double> y);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  long samples = 0;
};

// Mean of f(R(y)) over `samples` independent draws.
Estimate MultilinearSampled(const SubmodularFunction& f,
                            std::span<const double> y, long samples,
                            RandomSource& rng);

// The correlated extension: the best distribution over subsets whose
// marginals are capped by y. `alpha` lists the support with weights.
struct FPlusResult {
  double value = 0.0;
  std::vector<std::pair<ElementSet, double>> alpha;
  double duality_gap = 0.0;
};
FPlusResult FPlus(const SubmodularFunction& f, std::span<const double> y);

// Greedy scan of S in `order`, keeping e iff its marginal against the kept
// prefix is nonnegative.
ElementSet PruneEta(const SubmodularFunction& f, ElementSet s,
                    std::span<const int> order);

}  // namespace probing

#endif  // PROBING_SUBMODULAR_H_
