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


#include "probing/polytope.h"

#include <algorithm>
#include <cmath>

#include "probing/errors.h"
#include "probing/lp.h"

namespace probing {

namespace {

constexpr double kCutTolerance = 1e-9;
constexpr int kMaxRounds = 10000;

}  // namespace

ProbingPolytope::ProbingPolytope(const ProbingInstance& instance)
    : ProbingPolytope(instance.p(), instance.inner(), instance.outer()) {}

ProbingPolytope::ProbingPolytope(std::vector<double> p,
                                 const std::vector<Matroid>& inner,
                                 const std::vector<Matroid>& outer)
    : n_(static_cast<int>(p.size())),
      k_in_(static_cast<int>(inner.size())),
      p_(std::move(p)) {
  if (n_ > kExactCap) {
    throw CapabilityError("probing polytope optimization limited to n <= 12");
  }
  CheckUnitPoint(p_, n_, "p");
  for (const auto* list : {&inner, &outer}) {
    for (const auto& m : *list) {
      if (m.ground_size() != n_) {
        throw InputDomainError("matroid ground set does not match p");
      }
      std::vector<int> table(size_t{1} << n_);
      for (uint64_t mask = 0; mask < table.size(); ++mask) {
        table[mask] = m.Rank(ElementSet(mask));
      }
      ranks_.push_back(std::move(table));
    }
  }
}

std::vector<ProbingPolytope::Constraint> ProbingPolytope::Separate(
    std::span<const double> x, double tol) const {
  std::vector<Constraint> cuts;
  std::vector<double> coef(n_);
  std::vector<int> support;
  std::vector<double> sums;
  std::vector<uint64_t> full;
  for (int j = 0; j < static_cast<int>(ranks_.size()); ++j) {
    support.clear();
    for (int e = 0; e < n_; ++e) {
      coef[e] = Coefficient(j, e) * x[e];
      if (coef[e] > 0.0) support.push_back(e);
    }
    const int k = static_cast<int>(support.size());
    const uint64_t count = uint64_t{1} << k;
    sums.assign(count, 0.0);
    full.assign(count, 0);
    double worst = tol;
    uint64_t worst_set = 0;
    for (uint64_t mask = 1; mask < count; ++mask) {
      const int low = std::countr_zero(mask);
      const uint64_t rest = mask & (mask - 1);
      sums[mask] = sums[rest] + coef[support[low]];
      full[mask] = full[rest] | (uint64_t{1} << support[low]);
      const double violation = sums[mask] - ranks_[j][full[mask]];
      if (violation > worst) {
        worst = violation;
        worst_set = full[mask];
      }
    }
    if (worst_set != 0) cuts.push_back({j, ElementSet(worst_set)});
  }
  return cuts;
}

bool ProbingPolytope::Contains(std::span<const double> x, double scale,
                               double tol, std::string* why) const {
  if (static_cast<int>(x.size()) != n_) {
    throw InputDomainError("point dimension does not match the polytope");
  }
  if (!(scale > 0.0)) throw InputDomainError("scale must be positive");
  std::vector<double> y(n_);
  for (int e = 0; e < n_; ++e) {
    if (!(x[e] >= -tol && x[e] <= scale + tol)) {
      if (why) {
        *why = "coordinate " + std::to_string(e) + " = " +
               std::to_string(x[e]) + " outside [0, " + std::to_string(scale) +
               "]";
      }
      return false;
    }
    y[e] = std::max(0.0, x[e] / scale);
  }
  const auto cuts = Separate(y, tol);
  if (cuts.empty()) return true;
  if (why) {
    const auto& c = cuts.front();
    const bool inner = c.matroid < k_in_;
    *why = std::string(inner ? "inner" : "outer") + " matroid " +
           std::to_string(inner ? c.matroid : c.matroid - k_in_) +
           ": rank constraint on " + c.set.ToString() + " violated";
  }
  return false;
}

namespace {

// Grows `lp` with rank cuts until the x block (columns offset..offset+n-1)
// satisfies every matroid constraint.
template <typename SeparateFn, typename CoefFn, typename RankFn>
LpSolution SolveWithCuts(LinearProgram& lp, int offset, int n,
                         SeparateFn separate, CoefFn coef, RankFn rank,
                         int* rounds) {
  std::vector<std::pair<int, uint64_t>> added;
  for (*rounds = 1; *rounds <= kMaxRounds; ++*rounds) {
    LpSolution sol = SolveLp(lp);
    if (sol.status != LpStatus::kOptimal) {
      throw InvariantViolation("relaxation LP is bounded and contains 0, got " +
                               ToString(sol.status));
    }
    std::vector<double> x(sol.x.begin() + offset, sol.x.begin() + offset + n);
    bool grew = false;
    for (const auto& cut : separate(x)) {
      const std::pair<int, uint64_t> key{cut.matroid, cut.set.bits()};
      if (std::find(added.begin(), added.end(), key) != added.end()) continue;
      added.push_back(key);
      std::vector<double> row(lp.num_vars(), 0.0);
      for (int e : cut.set) row[offset + e] = coef(cut.matroid, e);
      lp.AddRow(std::move(row), RowSense::kLessEqual,
                rank(cut.matroid, cut.set));
      grew = true;
    }
    if (!grew) return sol;
  }
  throw CapabilityError("cutting-plane loop did not converge");
}

}  // namespace

std::vector<double> ProbingPolytope::LinearMax(std::span<const double> w) const {
  if (static_cast<int>(w.size()) != n_) {
    throw InputDomainError("weight dimension does not match the polytope");
  }
  std::vector<double> x(n_, 0.0);
  ElementSet positive;
  for (int e = 0; e < n_; ++e) {
    if (w[e] > 0.0) positive.Insert(e);
  }
  if (positive.Empty()) {
    last_rounds_ = 0;
    return x;
  }
  LinearProgram lp(n_);
  for (int e = 0; e < n_; ++e) {
    lp.objective[e] = positive.Contains(e) ? w[e] : 0.0;
    std::vector<double> row(n_, 0.0);
    row[e] = 1.0;
    lp.AddRow(std::move(row), RowSense::kLessEqual,
              positive.Contains(e) ? 1.0 : 0.0);
  }
  for (int j = 0; j < static_cast<int>(ranks_.size()); ++j) {
    std::vector<double> row(n_, 0.0);
    for (int e : positive) row[e] = Coefficient(j, e);
    lp.AddRow(std::move(row), RowSense::kLessEqual, RankOf(j, positive));
  }
  const LpSolution sol = SolveWithCuts(
      lp, 0, n_, [&](std::span<const double> y) {
        return Separate(y, kCutTolerance);
      },
      [&](int j, int e) { return Coefficient(j, e); },
      [&](int j, ElementSet s) { return RankOf(j, s); }, &last_rounds_);
  for (int e = 0; e < n_; ++e) x[e] = std::clamp(sol.x[e], 0.0, 1.0);
  return x;
}

ProbingPolytope::FPlusOptimum ProbingPolytope::MaxFPlus(
    const SubmodularFunction& f) const {
  if (f.ground_size() != n_) {
    throw InputDomainError("objective does not match the polytope");
  }
  const auto table = f.ValueTable();
  std::vector<uint64_t> columns;
  for (uint64_t mask = 1; mask < table.size(); ++mask) {
    if (table[mask] > 0.0) columns.push_back(mask);
  }
  FPlusOptimum out;
  out.x.assign(n_, 0.0);
  if (columns.empty()) return out;
  const int a = static_cast<int>(columns.size());
  LinearProgram lp(a + n_);
  for (int j = 0; j < a; ++j) lp.objective[j] = table[columns[j]];
  {
    std::vector<double> row(a + n_, 0.0);
    std::fill(row.begin(), row.begin() + a, 1.0);
    lp.AddRow(std::move(row), RowSense::kLessEqual, 1.0);
  }
  for (int e = 0; e < n_; ++e) {
    std::vector<double> row(a + n_, 0.0);
    for (int j = 0; j < a; ++j) row[j] = (columns[j] >> e) & 1 ? 1.0 : 0.0;
    row[a + e] = -p_[e];
    lp.AddRow(std::move(row), RowSense::kLessEqual, 0.0);
  }
  for (int e = 0; e < n_; ++e) {
    std::vector<double> row(a + n_, 0.0);
    row[a + e] = 1.0;
    lp.AddRow(std::move(row), RowSense::kLessEqual, 1.0);
  }
  const ElementSet all = ElementSet::Full(n_);
  for (int j = 0; j < static_cast<int>(ranks_.size()); ++j) {
    std::vector<double> row(a + n_, 0.0);
    for (int e = 0; e < n_; ++e) row[a + e] = Coefficient(j, e);
    lp.AddRow(std::move(row), RowSense::kLessEqual, RankOf(j, all));
  }
  const LpSolution sol = SolveWithCuts(
      lp, a, n_, [&](std::span<const double> y) {
        return Separate(y, kCutTolerance);
      },
      [&](int j, int e) { return Coefficient(j, e); },
      [&](int j, ElementSet s) { return RankOf(j, s); }, &last_rounds_);
  out.value = sol.value;
  for (int e = 0; e < n_; ++e) out.x[e] = std::clamp(sol.x[a + e], 0.0, 1.0);
  for (int j = 0; j < a; ++j) {
    if (sol.x[j] > 1e-13) out.alpha.emplace_back(ElementSet(columns[j]), sol.x[j]);
  }
  return out;
}

std::vector<double> ActivatedPolytope::LinearMax(
    std::span<const double> w) const {
  const auto& p = base_.p();
  std::vector<double> scaled(w.size());
  for (size_t e = 0; e < w.size(); ++e) scaled[e] = w[e] * p[e];
  std::vector<double> z = base_.LinearMax(scaled);
  for (size_t e = 0; e < z.size(); ++e) z[e] *= p[e];
  return z;
}

std::vector<double> ActivatedPolytope::ToX(std::span<const double> z) const {
  const auto& p = base_.p();
  std::vector<double> x(z.size(), 0.0);
  for (size_t e = 0; e < z.size(); ++e) {
    if (p[e] > 0.0) x[e] = std::min(1.0, z[e] / p[e]);
  }
  return x;
}

bool ActivatedPolytope::Contains(std::span<const double> z, double scale,
                                 double tol) const {
  const auto& p = base_.p();
  for (size_t e = 0; e < z.size(); ++e) {
    if (p[e] == 0.0 && std::abs(z[e]) > tol) return false;
    if (z[e] > p[e] * scale + tol) return false;
  }
  return base_.Contains(ToX(z), scale, tol);
}

}  // namespace probing
