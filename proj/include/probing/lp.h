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

// Small dense linear programs: maximize c.x subject to row constraints and
// x >= 0. Two-phase primal tableau simplex with Bland's rule. Intended for
// the few hundred rows/columns that desk-scale oracles produce.

#ifndef PROBING_LP_H_
#define PROBING_LP_H_

#include <string>
#include <vector>

namespace probing {

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct LinearProgram {
  explicit LinearProgram(int num_vars) : objective(num_vars, 0.0) {}

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  void AddRow(std::vector<double> coeffs, RowSense sense, double rhs);

  std::vector<double> objective;  // maximized
  std::vector<std::vector<double>> rows;
  std::vector<RowSense> senses;
  std::vector<double> rhs;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<double> x;
  // Row duals (shadow prices) for the maximization problem; filled only
  // when status is kOptimal.
  std::vector<double> duals;
  int pivots = 0;
};

struct SimplexOptions {
  double tolerance = 1e-10;
  int max_pivots = 1'000'000;
};

LpSolution SolveLp(const LinearProgram& lp, const SimplexOptions& options = {});

// b.y for the row duals of an optimal solution.
double DualObjective(const LinearProgram& lp, const LpSolution& solution);

// Largest violation of dual feasibility: for each column j the amount by
// which c_j exceeds A_j.y, plus sign violations of row duals (<= rows need
// y >= 0, >= rows need y <= 0).
double DualInfeasibility(const LinearProgram& lp, const LpSolution& solution);

std::string ToString(LpStatus status);

}  // namespace probing

#endif  // PROBING_LP_H_
