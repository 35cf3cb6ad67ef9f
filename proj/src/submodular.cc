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


#include "probing/submodular.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "probing/errors.h"
#include "probing/lp.h"
#include "probing/matroid.h"

namespace probing {

namespace {

constexpr int kCacheCap = 16;

void CheckNonnegative(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x) || x < 0.0) {
      throw InputDomainError(std::string(what) +
                             " must be finite and nonnegative");
    }
  }
}

}  // namespace

SubmodularFunction SubmodularFunction::Table(int n, std::vector<double> values) {
  if (n < 0 || n > kTableCap) {
    throw CapabilityError("explicit tables limited to n <= 20");
  }
  if (values.size() != (size_t{1} << n)) {
    throw InputDomainError("table needs 2^n values");
  }
  CheckNonnegative(values, "table values");
  if (std::abs(values[0]) > 1e-12) {
    throw InputDomainError("f(empty set) must be 0");
  }
  values[0] = 0.0;
  SubmodularFunction f(Kind::kTable, n);
  f.table_ = std::move(values);
  return f;
}

SubmodularFunction SubmodularFunction::Linear(std::vector<double> weights) {
  CheckNonnegative(weights, "linear weights");
  if (weights.size() > kMaxElements) {
    throw CapabilityError("ground set larger than 64");
  }
  SubmodularFunction f(Kind::kLinear, static_cast<int>(weights.size()));
  f.weights_ = std::move(weights);
  f.Finish();
  return f;
}

SubmodularFunction SubmodularFunction::Coverage(
    int n, std::vector<double> item_weights,
    std::vector<std::vector<int>> covers) {
  CheckNonnegative(item_weights, "item weights");
  if (n < 0 || n > kMaxElements) {
    throw CapabilityError("ground set larger than 64");
  }
  if (item_weights.size() > 64) {
    throw CapabilityError("coverage functions limited to 64 items");
  }
  if (static_cast<int>(covers.size()) != n) {
    throw InputDomainError("coverage needs one item list per element");
  }
  SubmodularFunction f(Kind::kCoverage, n);
  for (const auto& items : covers) {
    uint64_t mask = 0;
    for (int item : items) {
      if (item < 0 || item >= static_cast<int>(item_weights.size())) {
        throw InputDomainError("coverage item out of range");
      }
      mask |= uint64_t{1} << item;
    }
    f.cover_masks_.push_back(mask);
  }
  f.item_weights_ = std::move(item_weights);
  f.covers_ = std::move(covers);
  f.Finish();
  return f;
}

SubmodularFunction SubmodularFunction::Cut(int n, std::vector<CutEdge> edges,
                                           bool directed) {
  if (n < 0 || n > kMaxElements) {
    throw CapabilityError("ground set larger than 64");
  }
  for (const auto& edge : edges) {
    if (edge.from < 0 || edge.from >= n || edge.to < 0 || edge.to >= n) {
      throw InputDomainError("cut edge endpoint out of range");
    }
    if (!std::isfinite(edge.weight) || edge.weight < 0.0) {
      throw InputDomainError("cut weights must be nonnegative");
    }
  }
  SubmodularFunction f(Kind::kCut, n);
  f.edges_ = std::move(edges);
  f.directed_ = directed;
  f.Finish();
  return f;
}

void SubmodularFunction::Finish() {
  if (n_ > kCacheCap) return;
  std::vector<double> table(size_t{1} << n_);
  for (uint64_t mask = 0; mask < table.size(); ++mask) {
    table[mask] = Evaluate(ElementSet(mask));
  }
  table_ = std::move(table);
}

double SubmodularFunction::Evaluate(ElementSet s) const {
  switch (kind_) {
    case Kind::kTable:
      return table_[s.bits()];
    case Kind::kLinear: {
      double v = 0.0;
      for (int e : s) v += weights_[e];
      return v;
    }
    case Kind::kCoverage: {
      uint64_t covered = 0;
      for (int e : s) covered |= cover_masks_[e];
      double v = 0.0;
      for (int item : ElementSet(covered)) v += item_weights_[item];
      return v;
    }
    case Kind::kCut: {
      double v = 0.0;
      for (const auto& edge : edges_) {
        const bool in_from = s.Contains(edge.from);
        const bool in_to = s.Contains(edge.to);
        if (directed_ ? (in_from && !in_to) : (in_from != in_to)) {
          v += edge.weight;
        }
      }
      return v;
    }
  }
  return 0.0;
}

double SubmodularFunction::Value(ElementSet s) const {
  if (!s.SubsetOf(ElementSet::Full(n_))) {
    throw InputDomainError("set " + s.ToString() + " outside ground set");
  }
  if (!table_.empty()) return table_[s.bits()];
  return Evaluate(s);
}

std::vector<double> SubmodularFunction::ValueTable() const {
  if (n_ > kTableCap) throw CapabilityError("value table limited to n <= 20");
  if (!table_.empty()) return table_;
  std::vector<double> table(size_t{1} << n_);
  for (uint64_t mask = 0; mask < table.size(); ++mask) {
    table[mask] = Evaluate(ElementSet(mask));
  }
  return table;
}

std::string SubmodularFunction::Describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kTable:
      os << "table";
      break;
    case Kind::kLinear:
      os << "linear";
      break;
    case Kind::kCoverage:
      os << "coverage(items=" << item_weights_.size() << ")";
      break;
    case Kind::kCut:
      os << (directed_ ? "directed-cut" : "cut") << "(edges=" << edges_.size()
         << ")";
      break;
  }
  os << "[n=" << n_ << "]";
  return os.str();
}

std::optional<SubmodularityViolation> FindSubmodularityViolation(
    const SubmodularFunction& f, double tol) {
  const int n = f.ground_size();
  if (n > kExactCap) {
    throw CapabilityError("submodularity check limited to n <= 12");
  }
  const auto table = f.ValueTable();
  for (uint64_t mask = 0; mask < table.size(); ++mask) {
    const ElementSet s(mask);
    for (int a = 0; a < n; ++a) {
      if (s.Contains(a)) continue;
      for (int b = a + 1; b < n; ++b) {
        if (s.Contains(b)) continue;
        const double excess = table[s.With(a).With(b).bits()] + table[mask] -
                              table[s.With(a).bits()] - table[s.With(b).bits()];
        if (excess > tol) return SubmodularityViolation{s, a, b, excess};
      }
    }
  }
  return std::nullopt;
}

bool IsMonotone(const SubmodularFunction& f, double tol) {
  const int n = f.ground_size();
  const auto table = f.ValueTable();
  for (uint64_t mask = 0; mask < table.size(); ++mask) {
    for (int e = 0; e < n; ++e) {
      if (!((mask >> e) & 1) &&
          table[mask | (uint64_t{1} << e)] < table[mask] - tol) {
        return false;
      }
    }
  }
  return true;
}

double MultilinearFromTable(std::span<const double> table,
                            std::span<const double> y) {
  const int n = static_cast<int>(y.size());
  if (table.size() != (size_t{1} << n)) {
    throw InputDomainError("value table does not match dimension");
  }
  // Probability of each mask, built one coordinate at a time.
  std::vector<double> prob(size_t{1} << n);
  prob[0] = 1.0;
  for (int e = 0; e < n; ++e) {
    const size_t half = size_t{1} << e;
    for (size_t mask = 0; mask < half; ++mask) {
      prob[mask | half] = prob[mask] * y[e];
      prob[mask] *= 1.0 - y[e];
    }
  }
  double total = 0.0;
  for (size_t mask = 0; mask < prob.size(); ++mask) {
    total += prob[mask] * table[mask];
  }
  return total;
}

namespace {

void CheckUnitCube(std::span<const double> y, int n) {
  if (static_cast<int>(y.size()) != n) {
    throw InputDomainError("point dimension does not match ground set");
  }
  for (double v : y) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InputDomainError("point coordinate outside [0,1]");
    }
  }
}

}  // namespace

double MultilinearExact(const SubmodularFunction& f,
                        std::span<const double> y) {
  CheckUnitCube(y, f.ground_size());
  if (f.ground_size() > kTableCap) {
    throw CapabilityError("exact multilinear extension limited to n <= 20");
  }
  return MultilinearFromTable(f.ValueTable(), y);
}

Estimate MultilinearSampled(const SubmodularFunction& f,
                            std::span<const double> y, long samples,
                            RandomSource& rng) {
  CheckUnitCube(y, f.ground_size());
  if (samples < 1) throw InputDomainError("sample count must be positive");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (long s = 0; s < samples; ++s) {
    ElementSet r;
    for (int e = 0; e < f.ground_size(); ++e) {
      if (rng.Bernoulli(y[e])) r.Insert(e);
    }
    const double v = f.Value(r);
    sum += v;
    sum_sq += v * v;
  }
  Estimate est;
  est.samples = samples;
  est.value = sum / samples;
  const double var =
      samples > 1 ? std::max(0.0, (sum_sq - samples * est.value * est.value) /
                                      (samples - 1))
                  : 0.0;
  est.std_error = std::sqrt(var / samples);
  return est;
}

FPlusResult FPlus(const SubmodularFunction& f, std::span<const double> y) {
  const int n = f.ground_size();
  if (n > kExactCap) throw CapabilityError("f+ limited to n <= 12");
  if (static_cast<int>(y.size()) != n) {
    throw InputDomainError("point dimension does not match ground set");
  }
  for (double v : y) {
    if (!(v >= 0.0)) throw InputDomainError("f+ needs y >= 0");
  }
  const auto table = f.ValueTable();
  // One column per nonempty subset with positive value; the others can
  // only waste marginal budget.
  std::vector<uint64_t> columns;
  for (uint64_t mask = 1; mask < table.size(); ++mask) {
    if (table[mask] > 0.0) columns.push_back(mask);
  }
  FPlusResult result;
  if (columns.empty()) return result;
  LinearProgram lp(static_cast<int>(columns.size()));
  for (size_t j = 0; j < columns.size(); ++j) {
    lp.objective[j] = table[columns[j]];
  }
  lp.AddRow(std::vector<double>(columns.size(), 1.0), RowSense::kLessEqual,
            1.0);
  for (int e = 0; e < n; ++e) {
    std::vector<double> row(columns.size(), 0.0);
    for (size_t j = 0; j < columns.size(); ++j) {
      row[j] = (columns[j] >> e) & 1 ? 1.0 : 0.0;
    }
    lp.AddRow(std::move(row), RowSense::kLessEqual, y[e]);
  }
  const LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw InvariantViolation("f+ LP is feasible and bounded but solver said " +
                             ToString(sol.status));
  }
  result.value = sol.value;
  result.duality_gap = std::abs(DualObjective(lp, sol) - sol.value) +
                       DualInfeasibility(lp, sol);
  for (size_t j = 0; j < columns.size(); ++j) {
    if (sol.x[j] > 1e-13) {
      result.alpha.emplace_back(ElementSet(columns[j]), sol.x[j]);
    }
  }
  return result;
}

ElementSet PruneEta(const SubmodularFunction& f, ElementSet s,
                    std::span<const int> order) {
  ElementSet kept;
  for (int e : order) {
    if (!s.Contains(e)) continue;
    if (f.Marginal(kept, e) >= 0.0) kept.Insert(e);
  }
  return kept;
}

}  // namespace probing
