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


// Ground truth for small instances and the statistics used to judge Monte
// Carlo estimates.

#ifndef PROBING_ORACLES_H_
#define PROBING_ORACLES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "probing/element_set.h"
#include "probing/instance.h"
#include "probing/matroid.h"
#include "probing/stoch_cr.h"

namespace probing {

inline constexpr int kBruteForceCap = 10;

// Optimal adaptive probing policy by backward induction over states
// (probed set Q, active set S within Q). A state is encoded in base 3:
// digit 0 unprobed, 1 probed and inactive, 2 active.
class PolicyValue {
 public:
  double value() const { return value_; }
  // Pr[the optimal policy probes e].
  const std::vector<double>& x_opt() const { return x_opt_; }
  // Next element to probe at (Q, S), or -1 to stop. Throws
  // InputDomainError for unreachable or malformed states.
  int NextAction(ElementSet probed, ElementSet active) const;
  double StateValue(ElementSet probed, ElementSet active) const;
  size_t num_states() const { return values_.size(); }

 private:
  friend PolicyValue BruteForceOpt(const ProbingInstance& instance);
  static uint32_t Key(ElementSet probed, ElementSet active);

  int n_ = 0;
  double value_ = 0.0;
  std::vector<double> x_opt_;
  std::vector<double> values_;   // NaN for infeasible states
  std::vector<int8_t> actions_;
};

// n <= kBruteForceCap; ties between stopping and probing go to stopping.
PolicyValue BruteForceOpt(const ProbingInstance& instance);

struct RelaxationReport {
  double opt = 0.0;             // E[f(OPT)]
  std::vector<double> x_opt;
  double fplus_at_xopt = 0.0;   // f+(x_OPT * p)
  double fplus_max = 0.0;       // max over P of f+(x * p)
  bool x_opt_in_polytope = false;
  bool holds = false;           // both bounds within 1e-7
};
RelaxationReport VerifyRelaxationBound(const ProbingInstance& instance);

// Two-sided Hoeffding half-width for the mean of `count` samples in
// [0, range]: range * sqrt(ln(2 / (1 - level)) / (2 count)).
double HoeffdingHalfWidth(long count, double level = 0.99, double range = 1.0);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};
// Two-sample test on count vectors over a shared support. Categories empty
// in both samples are ignored.
ChiSquareResult ChiSquareEqual(std::span<const long> counts_a,
                               std::span<const long> counts_b);
// Same on raw outcomes (e.g. set masks); the support is the union of the
// observed values unless given.
ChiSquareResult ChiSquareEqual(std::span<const uint64_t> samples_a,
                               std::span<const uint64_t> samples_b,
                               std::span<const uint64_t> support = {});

// --- Verdicts and reports ----------------------------------------------

enum class Verdict { kPass, kFail, kInconclusive };
std::string ToString(Verdict v);

// Largest 3*CI that still allows a pass verdict.
inline constexpr double kMaxDecisiveWidth = 0.05;

// estimate >= bound: fail when estimate < bound - 3 ci, pass when also
// 3 ci <= max_width, inconclusive otherwise.
Verdict JudgeAtLeast(double estimate, double bound, double ci,
                     double max_width = kMaxDecisiveWidth);
Verdict JudgeAtMost(double estimate, double bound, double ci,
                    double max_width = kMaxDecisiveWidth);
// Two-sided: fail when |estimate - target| > ci.
Verdict JudgeWithin(double estimate, double target, double ci,
                    double max_width = kMaxDecisiveWidth);

struct ReportRow {
  std::string check;
  std::string tag;  // the guarantee being checked
  double estimate = 0.0;
  double bound = 0.0;
  double ci = 0.0;
  long count = 0;
  Verdict verdict = Verdict::kPass;
};

class Report {
 public:
  void Add(ReportRow row) { rows_.push_back(std::move(row)); }
  const std::vector<ReportRow>& rows() const { return rows_; }
  // Fail if any row fails, else inconclusive if any is, else pass.
  Verdict Overall() const;
  // 0 pass, 1 fail, 3 inconclusive.
  int ExitCode() const;
  std::string ToCsv() const;
  std::string ToJson() const;

 private:
  std::vector<ReportRow> rows_;
};

// --- Exhaustive laws -----------------------------------------------------

// Pr[e kept by random-order greedy | e in R(x)] for each e, exactly, by
// enumerating subsets and permutations (n <= 7).
std::vector<double> ExactGreedyBalance(const Matroid& m,
                                       std::span<const double> x);

// Availability, probe indicators and stopping steps of one scheme run,
// made observable.
class ProcessTrace {
 public:
  // From a run recorded with RunOptions::record_process.
  explicit ProcessTrace(const SchemeRun& run);

  int steps() const { return static_cast<int>(available_.size()) - 1; }
  bool Available(int e, int t) const { return available_[t].Contains(e); }
  bool Probed(int e, int t) const { return probed_[t].Contains(e); }
  // First step at which e is no longer available (steps() + 1 if never).
  int StoppingStep(int e) const;
  bool ProbedAtEnd(int e) const { return probed_.back().Contains(e); }
  // Y nonincreasing, P nondecreasing, nothing available at the end.
  std::optional<std::string> Validate() const;

 private:
  std::vector<ElementSet> available_;
  std::vector<ElementSet> probed_;
};

}  // namespace probing

#endif  // PROBING_ORACLES_H_
