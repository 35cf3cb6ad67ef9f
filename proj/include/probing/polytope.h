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


// The probing relaxation P(I_in, I_out): points x in [0,1]^n with x in the
// polytope of every outer matroid and p*x in the polytope of every inner
// matroid. Optimization over P uses rank-constraint cutting planes on top of
// the dense simplex, which is exact at desk scale (n <= 12).

#ifndef PROBING_POLYTOPE_H_
#define PROBING_POLYTOPE_H_

#include <span>
#include <string>
#include <vector>

#include "probing/element_set.h"
#include "probing/instance.h"
#include "probing/matroid.h"
#include "probing/submodular.h"

namespace probing {

class ProbingPolytope {
 public:
  explicit ProbingPolytope(const ProbingInstance& instance);
  ProbingPolytope(std::vector<double> p, const std::vector<Matroid>& inner,
                  const std::vector<Matroid>& outer);

  int size() const { return n_; }
  const std::vector<double>& p() const { return p_; }

  // True iff x / scale lies in P (within tol). On failure `why` names the
  // violated constraint.
  bool Contains(std::span<const double> x, double scale = 1.0,
                double tol = 1e-9, std::string* why = nullptr) const;

  // A maximizer of w.x over P. Coordinates with w_e <= 0 are zero, which is
  // optimal because P is downward closed.
  std::vector<double> LinearMax(std::span<const double> w) const;

  // max over x in P of f+(p*x), with the maximizer and the optimal
  // distribution.
  struct FPlusOptimum {
    double value = 0.0;
    std::vector<double> x;
    std::vector<std::pair<ElementSet, double>> alpha;
  };
  FPlusOptimum MaxFPlus(const SubmodularFunction& f) const;

  // Cutting-plane rounds used by the last optimization (diagnostics).
  int last_rounds() const { return last_rounds_; }

 private:
  struct Constraint {
    int matroid;  // index into ranks_
    ElementSet set;
  };

  // Most violated rank constraint of each matroid at x.
  std::vector<Constraint> Separate(std::span<const double> x,
                                   double tol) const;
  double Coefficient(int matroid, int e) const {
    return matroid < k_in_ ? p_[e] : 1.0;
  }
  int RankOf(int matroid, ElementSet s) const {
    return ranks_[matroid][s.bits()];
  }

  int n_ = 0;
  int k_in_ = 0;
  std::vector<double> p_;
  std::vector<std::vector<int>> ranks_;  // inner matroids first
  mutable int last_rounds_ = 0;
};

// The same polytope viewed through z = p*x; the measured greedy runs here
// so that its output z satisfies z / p in b*P directly.
class ActivatedPolytope {
 public:
  explicit ActivatedPolytope(const ProbingPolytope& base) : base_(base) {}

  int size() const { return base_.size(); }
  const ProbingPolytope& base() const { return base_; }

  // argmax of w.z over z in p*P.
  std::vector<double> LinearMax(std::span<const double> w) const;
  // z / (scale * p) in P; coordinates with p_e = 0 must be 0.
  bool Contains(std::span<const double> z, double scale = 1.0,
                double tol = 1e-9) const;
  // x = z / p (0 where p_e = 0).
  std::vector<double> ToX(std::span<const double> z) const;

 private:
  const ProbingPolytope& base_;
};

}  // namespace probing

#endif  // PROBING_POLYTOPE_H_
