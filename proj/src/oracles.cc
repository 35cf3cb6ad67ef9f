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


#include "probing/oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>
#include <json.hpp>

#include "probing/errors.h"
#include "probing/polytope.h"

namespace probing {

namespace {

std::vector<uint32_t> PowersOfThree(int n) {
  std::vector<uint32_t> pow3(n + 1, 1);
  for (int i = 1; i <= n; ++i) pow3[i] = pow3[i - 1] * 3;
  return pow3;
}

}  // namespace

uint32_t PolicyValue::Key(ElementSet probed, ElementSet active) {
  uint32_t key = 0;
  uint32_t place = 1;
  for (int e = 0; e < kBruteForceCap; ++e, place *= 3) {
    if (active.Contains(e)) {
      key += 2 * place;
    } else if (probed.Contains(e)) {
      key += place;
    }
  }
  return key;
}

int PolicyValue::NextAction(ElementSet probed, ElementSet active) const {
  if (!active.SubsetOf(probed) || !probed.SubsetOf(ElementSet::Full(n_))) {
    throw InputDomainError("policy state needs S within Q within [n]");
  }
  const uint32_t key = Key(probed, active);
  if (std::isnan(values_[key])) {
    throw InputDomainError("policy state " + probed.ToString() + "/" +
                           active.ToString() + " is infeasible");
  }
  return actions_[key];
}

double PolicyValue::StateValue(ElementSet probed, ElementSet active) const {
  NextAction(probed, active);
  return values_[Key(probed, active)];
}

PolicyValue BruteForceOpt(const ProbingInstance& instance) {
  const int n = instance.size();
  if (n > kBruteForceCap) {
    throw CapabilityError("brute-force policy search limited to n <= " +
                          std::to_string(kBruteForceCap));
  }
  const auto pow3 = PowersOfThree(n);
  const auto& p = instance.p();
  const auto& f = instance.objective();
  PolicyValue pv;
  pv.n_ = n;
  pv.values_.assign(pow3[n], std::numeric_limits<double>::quiet_NaN());
  pv.actions_.assign(pow3[n], -1);

  std::vector<char> outer_ok(size_t{1} << n), inner_ok(size_t{1} << n);
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    outer_ok[mask] = instance.OuterIndependent(ElementSet(mask));
    inner_ok[mask] = instance.InnerIndependent(ElementSet(mask));
  }

  // Keys grow when an element is probed, so descending key order visits
  // every successor first.
  for (int64_t key = pow3[n] - 1; key >= 0; --key) {
    ElementSet q, s;
    for (int e = 0; e < n; ++e) {
      const int digit = static_cast<int>(key / pow3[e] % 3);
      if (digit >= 1) q.Insert(e);
      if (digit == 2) s.Insert(e);
    }
    if (!outer_ok[q.bits()] || !inner_ok[s.bits()]) continue;
    double best = f(s);
    int action = -1;
    for (int e = 0; e < n; ++e) {
      if (q.Contains(e)) continue;
      if (!outer_ok[q.With(e).bits()] || !inner_ok[s.With(e).bits()]) continue;
      const double on = pv.values_[key + 2 * pow3[e]];
      const double off = pv.values_[key + pow3[e]];
      const double v = p[e] * on + (1.0 - p[e]) * off;
      if (v > best + 1e-12) {
        best = v;
        action = e;
      }
    }
    pv.values_[key] = best;
    pv.actions_[key] = static_cast<int8_t>(action);
  }
  pv.value_ = pv.values_[0];

  // Forward pass for the probe marginals, layer by number of probes.
  pv.x_opt_.assign(n, 0.0);
  std::map<uint32_t, double> layer = {{0, 1.0}};
  while (!layer.empty()) {
    std::map<uint32_t, double> next;
    for (const auto& [key, mass] : layer) {
      const int e = pv.actions_[key];
      if (e < 0) continue;
      pv.x_opt_[e] += mass;
      if (p[e] > 0.0) next[key + 2 * pow3[e]] += mass * p[e];
      if (p[e] < 1.0) next[key + pow3[e]] += mass * (1.0 - p[e]);
    }
    layer = std::move(next);
  }
  return pv;
}

RelaxationReport VerifyRelaxationBound(const ProbingInstance& instance) {
  RelaxationReport r;
  const PolicyValue pv = BruteForceOpt(instance);
  r.opt = pv.value();
  r.x_opt = pv.x_opt();
  const int n = instance.size();
  std::vector<double> y(n);
  for (int e = 0; e < n; ++e) y[e] = std::min(1.0, instance.p()[e] * r.x_opt[e]);
  r.fplus_at_xopt = FPlus(instance.objective(), y).value;
  const ProbingPolytope polytope(instance);
  r.x_opt_in_polytope = polytope.Contains(r.x_opt, 1.0, 1e-7);
  r.fplus_max = polytope.MaxFPlus(instance.objective()).value;
  r.holds = r.x_opt_in_polytope && r.fplus_at_xopt >= r.opt - 1e-7 &&
            r.fplus_max >= r.opt - 1e-7;
  return r;
}

double HoeffdingHalfWidth(long count, double level, double range) {
  if (count < 1) throw InputDomainError("Hoeffding width needs count >= 1");
  if (!(level > 0.0 && level < 1.0)) {
    throw InputDomainError("confidence level must lie in (0,1)");
  }
  if (!(range >= 0.0)) throw InputDomainError("range must be nonnegative");
  return range * std::sqrt(std::log(2.0 / (1.0 - level)) /
                           (2.0 * static_cast<double>(count)));
}

ChiSquareResult ChiSquareEqual(std::span<const long> counts_a,
                               std::span<const long> counts_b) {
  if (counts_a.empty() || counts_a.size() != counts_b.size()) {
    throw InputDomainError("chi-square needs a nonempty shared support");
  }
  double total_a = 0.0, total_b = 0.0;
  for (size_t i = 0; i < counts_a.size(); ++i) {
    if (counts_a[i] < 0 || counts_b[i] < 0) {
      throw InputDomainError("counts must be nonnegative");
    }
    total_a += static_cast<double>(counts_a[i]);
    total_b += static_cast<double>(counts_b[i]);
  }
  if (total_a == 0.0 || total_b == 0.0) {
    throw InputDomainError("chi-square needs samples on both sides");
  }
  const double total = total_a + total_b;
  ChiSquareResult r;
  int used = 0;
  for (size_t i = 0; i < counts_a.size(); ++i) {
    const double a = static_cast<double>(counts_a[i]);
    const double b = static_cast<double>(counts_b[i]);
    if (a + b == 0.0) continue;
    ++used;
    const double ea = total_a * (a + b) / total;
    const double eb = total_b * (a + b) / total;
    r.statistic += (a - ea) * (a - ea) / ea + (b - eb) * (b - eb) / eb;
  }
  r.dof = used - 1;
  if (r.dof <= 0) {
    r.p_value = 1.0;
    return r;
  }
  const boost::math::chi_squared dist(r.dof);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

ChiSquareResult ChiSquareEqual(std::span<const uint64_t> samples_a,
                               std::span<const uint64_t> samples_b,
                               std::span<const uint64_t> support) {
  std::map<uint64_t, size_t> index;
  for (uint64_t v : support) index.emplace(v, index.size());
  if (support.empty()) {
    for (uint64_t v : samples_a) index.emplace(v, index.size());
    for (uint64_t v : samples_b) index.emplace(v, index.size());
  }
  if (index.empty()) throw InputDomainError("chi-square support is empty");
  std::vector<long> a(index.size(), 0), b(index.size(), 0);
  auto tally = [&](std::span<const uint64_t> samples, std::vector<long>& out) {
    for (uint64_t v : samples) {
      const auto it = index.find(v);
      if (it == index.end()) {
        throw InputDomainError("sample outside the declared support");
      }
      ++out[it->second];
    }
  };
  tally(samples_a, a);
  tally(samples_b, b);
  return ChiSquareEqual(std::span<const long>(a), std::span<const long>(b));
}

std::string ToString(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

Verdict JudgeAtLeast(double estimate, double bound, double ci,
                     double max_width) {
  if (estimate < bound - 3.0 * ci) return Verdict::kFail;
  return 3.0 * ci <= max_width ? Verdict::kPass : Verdict::kInconclusive;
}

Verdict JudgeAtMost(double estimate, double bound, double ci,
                    double max_width) {
  if (estimate > bound + 3.0 * ci) return Verdict::kFail;
  return 3.0 * ci <= max_width ? Verdict::kPass : Verdict::kInconclusive;
}

Verdict JudgeWithin(double estimate, double target, double ci,
                    double max_width) {
  if (std::abs(estimate - target) > ci) return Verdict::kFail;
  return 3.0 * ci <= max_width ? Verdict::kPass : Verdict::kInconclusive;
}

Verdict Report::Overall() const {
  Verdict v = Verdict::kPass;
  for (const auto& row : rows_) {
    if (row.verdict == Verdict::kFail) return Verdict::kFail;
    if (row.verdict == Verdict::kInconclusive) v = Verdict::kInconclusive;
  }
  return v;
}

int Report::ExitCode() const {
  switch (Overall()) {
    case Verdict::kPass:
      return 0;
    case Verdict::kFail:
      return 1;
    case Verdict::kInconclusive:
      return 3;
  }
  return 1;
}

namespace {

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Number(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

std::string Report::ToCsv() const {
  std::string out = "check,tag,estimate,bound,ci,count,verdict\n";
  for (const auto& r : rows_) {
    out += CsvField(r.check) + "," + CsvField(r.tag) + "," +
           Number(r.estimate) + "," + Number(r.bound) + "," + Number(r.ci) +
           "," + std::to_string(r.count) + "," + ToString(r.verdict) + "\n";
  }
  return out;
}

std::string Report::ToJson() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rows_) {
    rows.push_back({{"check", r.check},
                    {"tag", r.tag},
                    {"estimate", r.estimate},
                    {"bound", r.bound},
                    {"ci", r.ci},
                    {"count", r.count},
                    {"verdict", ToString(r.verdict)}});
  }
  nlohmann::json doc = {{"verdict", ToString(Overall())}, {"rows", rows}};
  return doc.dump(2) + "\n";
}

std::vector<double> ExactGreedyBalance(const Matroid& m,
                                       std::span<const double> x) {
  const int n = m.ground_size();
  if (n > 7) throw CapabilityError("exact greedy balance limited to n <= 7");
  CheckUnitPoint(x, n, "x");
  std::vector<double> kept(n, 0.0);
  std::vector<int> perm;
  for (uint64_t mask = 1; mask < (uint64_t{1} << n); ++mask) {
    const ElementSet r(mask);
    double pr = 1.0;
    for (int e = 0; e < n; ++e) pr *= r.Contains(e) ? x[e] : 1.0 - x[e];
    if (pr == 0.0) continue;
    perm = r.ToVector();
    std::vector<double> hits(n, 0.0);
    long orders = 0;
    do {
      ++orders;
      ElementSet accepted;
      for (int e : perm) {
        if (m.IsIndependent(accepted.With(e))) {
          accepted.Insert(e);
          hits[e] += 1.0;
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (int e : r) kept[e] += pr * hits[e] / static_cast<double>(orders);
  }
  std::vector<double> balance(n, 1.0);
  for (int e = 0; e < n; ++e) {
    if (x[e] > 0.0) balance[e] = kept[e] / x[e];
  }
  return balance;
}

ProcessTrace::ProcessTrace(const SchemeRun& run)
    : available_(run.availability), probed_(run.probed) {
  if (available_.empty() || available_.size() != probed_.size()) {
    throw InputDomainError("run was not recorded with record_process");
  }
}

int ProcessTrace::StoppingStep(int e) const {
  for (int t = 0; t <= steps(); ++t) {
    if (!available_[t].Contains(e)) return t;
  }
  return steps() + 1;
}

std::optional<std::string> ProcessTrace::Validate() const {
  for (int t = 1; t <= steps(); ++t) {
    if (!available_[t].SubsetOf(available_[t - 1])) {
      return "availability grew at step " + std::to_string(t);
    }
    if (!probed_[t - 1].SubsetOf(probed_[t])) {
      return "probe indicators dropped at step " + std::to_string(t);
    }
  }
  if (!available_.back().Empty()) return "elements still available at the end";
  return std::nullopt;
}

}  // namespace probing
