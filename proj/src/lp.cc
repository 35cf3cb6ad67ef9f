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

#include "probing/lp.h"

#include <algorithm>
#include <cmath>

#include "probing/errors.h"

namespace probing {

void LinearProgram::AddRow(std::vector<double> coeffs, RowSense sense,
                           double rhs_value) {
  if (static_cast<int>(coeffs.size()) != num_vars()) {
    throw InputDomainError("LinearProgram::AddRow: width mismatch");
  }
  for (double v : coeffs) {
    if (!std::isfinite(v)) throw InputDomainError("non-finite LP coefficient");
  }
  if (!std::isfinite(rhs_value)) throw InputDomainError("non-finite LP rhs");
  rows.push_back(std::move(coeffs));
  senses.push_back(sense);
  rhs.push_back(rhs_value);
}

namespace {

class Tableau {
 public:
  Tableau(const LinearProgram& lp, double tol) : tol_(tol) {
    m_ = lp.num_rows();
    n_ = lp.num_vars();
    sign_.assign(m_, 1.0);
    identity_col_.assign(m_, -1);

    // Normalize to nonnegative right-hand sides.
    std::vector<RowSense> sense = lp.senses;
    for (int i = 0; i < m_; ++i) {
      if (lp.rhs[i] < 0) {
        sign_[i] = -1.0;
        if (sense[i] == RowSense::kLessEqual) {
          sense[i] = RowSense::kGreaterEqual;
        } else if (sense[i] == RowSense::kGreaterEqual) {
          sense[i] = RowSense::kLessEqual;
        }
      }
    }

    cols_ = n_;
    std::vector<int> surplus_col(m_, -1);
    for (int i = 0; i < m_; ++i) {
      if (sense[i] == RowSense::kLessEqual) {
        identity_col_[i] = cols_++;
      } else if (sense[i] == RowSense::kGreaterEqual) {
        surplus_col[i] = cols_++;
      }
    }
    first_artificial_ = cols_;
    for (int i = 0; i < m_; ++i) {
      if (sense[i] != RowSense::kLessEqual) identity_col_[i] = cols_++;
    }

    t_.assign(static_cast<size_t>(m_) * cols_, 0.0);
    b_.assign(m_, 0.0);
    basis_.assign(m_, -1);
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) at(i, j) = sign_[i] * lp.rows[i][j];
      b_[i] = sign_[i] * lp.rhs[i];
      at(i, identity_col_[i]) = 1.0;
      if (surplus_col[i] >= 0) at(i, surplus_col[i]) = -1.0;
      basis_[i] = identity_col_[i];
    }
    cost_.assign(cols_, 0.0);
    d_.assign(cols_, 0.0);
  }

  // Returns false if phase 1 ends with positive infeasibility.
  bool PhaseOne(int max_pivots, int* pivots) {
    if (first_artificial_ == cols_) return true;
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int j = first_artificial_; j < cols_; ++j) cost_[j] = -1.0;
    RecomputeObjectiveRow();
    if (Optimize(/*allow_artificial=*/true, max_pivots, pivots) !=
        LpStatus::kOptimal) {
      throw InvariantViolation("phase 1 cannot be unbounded");
    }
    double scale = 1.0;
    for (double v : b_) scale = std::max(scale, std::abs(v));
    if (-z_ > 1e-9 * scale) return false;
    // Drive zero-level artificials out of the basis where possible.
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (int j = 0; j < first_artificial_; ++j) {
        if (std::abs(at(i, j)) > 1e-9) {
          Pivot(i, j);
          ++*pivots;
          break;
        }
      }
    }
    return true;
  }

  LpStatus PhaseTwo(const std::vector<double>& objective, int max_pivots,
                    int* pivots) {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int j = 0; j < n_; ++j) cost_[j] = objective[j];
    RecomputeObjectiveRow();
    return Optimize(/*allow_artificial=*/false, max_pivots, pivots);
  }

  std::vector<double> Primal() const {
    std::vector<double> x(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = std::max(0.0, b_[i]);
    }
    return x;
  }

  std::vector<double> Duals() const {
    std::vector<double> y(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const int col = identity_col_[r];
      double v = 0.0;
      for (int i = 0; i < m_; ++i) v += cost_[basis_[i]] * at(i, col);
      y[r] = sign_[r] * v;
    }
    return y;
  }

 private:
  double& at(int i, int j) { return t_[static_cast<size_t>(i) * cols_ + j]; }
  double at(int i, int j) const {
    return t_[static_cast<size_t>(i) * cols_ + j];
  }

  void RecomputeObjectiveRow() {
    for (int j = 0; j < cols_; ++j) {
      double v = -cost_[j];
      for (int i = 0; i < m_; ++i) v += cost_[basis_[i]] * at(i, j);
      d_[j] = v;
    }
    z_ = 0.0;
    for (int i = 0; i < m_; ++i) z_ += cost_[basis_[i]] * b_[i];
  }

  LpStatus Optimize(bool allow_artificial, int max_pivots, int* pivots) {
    const int limit = allow_artificial ? cols_ : first_artificial_;
    while (true) {
      // Bland: lowest-index improving column.
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (d_[j] < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= tol_) continue;
        const double ratio = b_[i] / a;
        if (leave < 0 || ratio < best - 1e-12 ||
            (ratio <= best + 1e-12 && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      Pivot(leave, enter);
      if (++*pivots > max_pivots) {
        throw CapabilityError("simplex pivot limit exceeded");
      }
    }
  }

  void Pivot(int row, int col) {
    const double piv = at(row, col);
    double* prow = &t_[static_cast<size_t>(row) * cols_];
    const double inv = 1.0 / piv;
    for (int j = 0; j < cols_; ++j) prow[j] *= inv;
    prow[col] = 1.0;
    b_[row] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      double* r = &t_[static_cast<size_t>(i) * cols_];
      const double f = r[col];
      if (f == 0.0) continue;
      for (int j = 0; j < cols_; ++j) r[j] -= f * prow[j];
      r[col] = 0.0;
      b_[i] -= f * b_[row];
      if (std::abs(b_[i]) < 1e-14) b_[i] = 0.0;
    }
    const double f = d_[col];
    if (f != 0.0) {
      for (int j = 0; j < cols_; ++j) d_[j] -= f * prow[j];
      d_[col] = 0.0;
      z_ -= f * b_[row];
    }
    basis_[row] = col;
  }

  double tol_;
  int m_ = 0;
  int n_ = 0;
  int cols_ = 0;
  int first_artificial_ = 0;
  std::vector<double> t_;
  std::vector<double> b_;
  std::vector<int> basis_;
  std::vector<double> sign_;
  std::vector<int> identity_col_;
  std::vector<double> cost_;
  std::vector<double> d_;
  double z_ = 0.0;
};

}  // namespace

LpSolution SolveLp(const LinearProgram& lp, const SimplexOptions& options) {
  LpSolution sol;
  Tableau tab(lp, options.tolerance);
  if (!tab.PhaseOne(options.max_pivots, &sol.pivots)) {
    sol.status = LpStatus::kInfeasible;
    return sol;
  }
  sol.status = tab.PhaseTwo(lp.objective, options.max_pivots, &sol.pivots);
  if (sol.status != LpStatus::kOptimal) return sol;
  sol.x = tab.Primal();
  sol.duals = tab.Duals();
  sol.value = 0.0;
  for (int j = 0; j < lp.num_vars(); ++j) sol.value += lp.objective[j] * sol.x[j];
  return sol;
}

double DualObjective(const LinearProgram& lp, const LpSolution& solution) {
  double v = 0.0;
  for (int i = 0; i < lp.num_rows(); ++i) v += lp.rhs[i] * solution.duals[i];
  return v;
}

double DualInfeasibility(const LinearProgram& lp, const LpSolution& solution) {
  double worst = 0.0;
  for (int j = 0; j < lp.num_vars(); ++j) {
    double reduced = 0.0;
    for (int i = 0; i < lp.num_rows(); ++i) {
      reduced += lp.rows[i][j] * solution.duals[i];
    }
    worst = std::max(worst, lp.objective[j] - reduced);
  }
  for (int i = 0; i < lp.num_rows(); ++i) {
    if (lp.senses[i] == RowSense::kLessEqual) {
      worst = std::max(worst, -solution.duals[i]);
    } else if (lp.senses[i] == RowSense::kGreaterEqual) {
      worst = std::max(worst, solution.duals[i]);
    }
  }
  return worst;
}

std::string ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

}  // namespace probing
