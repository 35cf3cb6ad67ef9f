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


#include "probing/experiments.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "probing/errors.h"
#include "probing/stoch_cr.h"
#include "probing/submodular.h"

namespace probing {
namespace {

std::string ElementLabel(int e) { return "element " + std::to_string(e); }

double Frequency(long hits, long count) {
  return count > 0 ? static_cast<double>(hits) / static_cast<double>(count)
                   : 0.0;
}

// Violation counters become pass/fail rows with no sampling error.
ReportRow CountRow(std::string check, std::string tag, long violations,
                   long count) {
  return {std::move(check), std::move(tag), static_cast<double>(violations),
          0.0, 0.0, count,
          violations == 0 ? Verdict::kPass : Verdict::kFail};
}

ReportRow ExactRow(std::string check, std::string tag, double value,
                   double bound, bool ok) {
  return {std::move(check), std::move(tag), value, bound, 0.0, 1,
          ok ? Verdict::kPass : Verdict::kFail};
}

double MaxValue(const SubmodularFunction& f) {
  const int n = f.ground_size();
  if (n > 20) throw CapabilityError("objective range needs n <= 20");
  double best = 0.0;
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    best = std::max(best, f(ElementSet(mask)));
  }
  return best;
}

}  // namespace

std::vector<double> RandomPointInP(const ProbingPolytope& polytope,
                                   int vertices, double scale,
                                   RandomSource& rng) {
  const int n = polytope.size();
  std::vector<double> lambda(vertices);
  double total = 0.0;
  for (double& l : lambda) total += (l = 0.1 + rng.Uniform());
  std::vector<double> x(n, 0.0);
  std::vector<double> w(n);
  for (double l : lambda) {
    for (double& v : w) v = rng.Uniform();
    const auto vertex = polytope.LinearMax(w);
    for (int e = 0; e < n; ++e) x[e] += scale * l / total * vertex[e];
  }
  // Guard the scaled point against rounding past the boundary.
  for (double& v : x) v = std::clamp(v * (1 - 1e-12), 0.0, 1.0);
  return x;
}

void CheckSchemeBalance(const ProbingInstance& instance,
                        std::span<const double> x, double b, long runs,
                        RandomSource& rng, Report* report) {
  const PreparedScheme scheme(instance, {x.begin(), x.end()}, b);
  const double c = scheme.guarantee();
  const double ci = HoeffdingHalfWidth(runs);
  SchemeWorkspace workspace;
  for (int e : scheme.support()) {
    RunOptions options;
    options.force_active = e;
    long hits = 0;
    for (long t = 0; t < runs; ++t) {
      const ElementSet a = SampleROfX(x, rng).With(e);
      hits += scheme.Run(a, rng, options, workspace).output.Contains(e);
    }
    const double est = Frequency(hits, runs);
    report->Add({ElementLabel(e), "stoch-cr-balance", est, c, ci, runs,
                 JudgeAtLeast(est, c, ci)});
  }
}

void CheckConditionalLaw(const ProbingInstance& instance,
                         std::span<const double> x, double b, long runs,
                         RandomSource& rng, Report* report) {
  const PreparedScheme scheme(instance, {x.begin(), x.end()}, b);
  const CriticalAssignment critical = scheme.SampleCritical(rng);
  RunOptions options;
  options.critical = &critical;
  const ElementSet a = scheme.support();
  std::vector<long> hits(instance.size(), 0);
  SchemeWorkspace workspace;
  for (long t = 0; t < runs; ++t) {
    for (int e : scheme.Run(a, rng, options, workspace).output) ++hits[e];
  }
  const double ci = HoeffdingHalfWidth(runs);
  for (int e : a) {
    const double target = ConditionalProbeProbability(scheme, critical, a, e);
    const double est = Frequency(hits[e], runs);
    report->Add({ElementLabel(e), "conditional-law", est, target, ci, runs,
                 JudgeWithin(est, target, ci)});
  }
}

void CheckBlockingSets(const ProbingInstance& instance,
                       std::span<const double> x, double b, long samples,
                       RandomSource& rng, Report* report) {
  const PreparedScheme scheme(instance, {x.begin(), x.end()}, b);
  const int n = instance.size();
  const int m = scheme.num_matroids();
  const ElementSet support = scheme.support();
  const auto& p = instance.p();
  auto coefficient = [&](int j, int f) { return scheme.is_inner(j) ? p[f] : 1.0; };

  std::vector<std::vector<double>> sums(m, std::vector<double>(n, 0.0));
  CriticalAssignment critical;
  for (long t = 0; t < samples; ++t) {
    scheme.SampleCritical(rng, &critical);
    const ElementSet r = SampleROfX(x, rng) & support;
    for (int j = 0; j < m; ++j) {
      const auto gamma = AllBlockingSets(scheme.initial_state(j), critical[j]);
      for (int e : support) {
        for (int f : gamma[e] & r) sums[j][e] += coefficient(j, f);
      }
    }
  }
  for (int j = 0; j < m; ++j) {
    for (int e : support) {
      double range = 0.0;
      for (int f : support.Without(e)) range += coefficient(j, f);
      const double ci = range > 0 ? HoeffdingHalfWidth(samples, 0.99, range) : 0.0;
      const double est = sums[j][e] / static_cast<double>(samples);
      report->Add({(scheme.is_inner(j) ? "inner " : "outer ") +
                       std::to_string(scheme.is_inner(j) ? j : j - instance.k_in()) +
                       " " + ElementLabel(e),
                   "blocking-expectation", est, b, ci, samples,
                   JudgeAtMost(est, b, ci, kMaxDecisiveWidth * std::max(1.0, range))});
    }
  }
}

void CheckMappingProperties(const ProbingInstance& instance,
                            std::span<const double> x, double b, long runs,
                            RandomSource& rng, Report* report) {
  const PreparedScheme scheme(instance, {x.begin(), x.end()}, b);
  RunOptions options;
  options.check_invariants = true;
  options.record_process = true;
  SchemeWorkspace workspace;
  long violations = 0;
  std::string first;
  for (long t = 0; t < runs; ++t) {
    try {
      const SchemeRun run =
          scheme.Run(SampleROfX(x, rng), rng, options, workspace);
      std::string why;
      if (!ReplayFeasible(instance, run.trace, &why)) throw InvariantViolation(why);
      if (auto problem = ProcessTrace(run).Validate()) {
        throw InvariantViolation(*problem);
      }
    } catch (const InvariantViolation& err) {
      if (violations++ == 0) first = err.what();
    }
  }
  report->Add(CountRow(violations == 0 ? "invariant violations"
                                       : "invariant violations: " + first,
                       "mapping-properties", violations, runs));
}

GreedyResult CheckMeasuredGreedy(const ProbingInstance& instance,
                                 const GreedyConfig& config, RandomSource& rng,
                                 Report* report) {
  const ProbingPolytope polytope(instance);
  const ActivatedPolytope activated(polytope);
  GreedyConfig cfg = config;
  cfg.record_trajectory = true;
  const GreedyResult result =
      MeasuredContinuousGreedy(instance.objective(), activated, cfg, rng);
  const double target = polytope.MaxFPlus(instance.objective()).value;
  const double b = cfg.b;
  const double bound = (b * std::exp(-b) - 0.02) * target;
  report->Add({"F(y(b))", "measured-greedy", result.value, bound, 0.0,
               result.steps,
               result.value >= bound ? Verdict::kPass : Verdict::kFail});
  const TrajectoryAudit audit =
      AuditTrajectory(result, cfg.delta, target, 0.05 * cfg.delta * target);
  report->Add({"per-step gain", "measured-greedy", audit.worst_step_margin, 0.0,
               0.0, result.steps,
               audit.step_violations == 0 ? Verdict::kPass : Verdict::kFail});
  report->Add(CountRow("coordinate cap", "measured-greedy",
                       audit.cap_violations + (audit.nondecreasing ? 0 : 1),
                       result.steps));
  const bool inside = polytope.Contains(result.x, b, 1e-7);
  report->Add(ExactRow("y/p in bP", "measured-greedy", inside ? 1.0 : 0.0, 1.0,
                       inside));
  return result;
}

void CheckRelaxation(const ProbingInstance& instance, Report* report) {
  const RelaxationReport r = VerifyRelaxationBound(instance);
  report->Add(ExactRow("f+(x_OPT p) vs E[f(OPT)]", "relaxation-bound",
                       r.fplus_at_xopt, r.opt,
                       r.fplus_at_xopt >= r.opt - 1e-7));
  report->Add(ExactRow("x_OPT in P", "relaxation-bound",
                       r.x_opt_in_polytope ? 1.0 : 0.0, 1.0, r.x_opt_in_polytope));
  report->Add(ExactRow("max f+ vs E[f(OPT)]", "relaxation-bound", r.fplus_max,
                       r.opt, r.fplus_max >= r.opt - 1e-7));
}

EndToEndResult CheckEndToEnd(const ProbingInstance& instance,
                             const GreedyConfig& config, long runs,
                             RandomSource& rng, Report* report) {
  const SubmodularFunction& f = instance.objective();
  EndToEndResult out;
  out.opt = BruteForceOpt(instance).value();
  const ProbingPolytope polytope(instance);
  const ActivatedPolytope activated(polytope);
  GreedyConfig cfg = config;
  cfg.record_trajectory = false;
  const GreedyResult greedy = MeasuredContinuousGreedy(f, activated, cfg, rng);
  const PreparedScheme scheme(instance, greedy.x, cfg.b);

  const double range = MaxValue(f);
  double total = 0.0;
  for (long t = 0; t < runs; ++t) {
    total += f(RunSchemeWithPruning(scheme, f, rng).output);
  }
  out.mean = total / static_cast<double>(runs);
  out.ci = range > 0 ? HoeffdingHalfWidth(runs, 0.99, range) : 0.0;
  out.bound = scheme.guarantee() * (cfg.b * std::exp(-cfg.b) - 0.02) * out.opt;
  report->Add({"E[f(S^prun)]", "end-to-end", out.mean, out.bound, out.ci, runs,
               JudgeAtLeast(out.mean, out.bound, out.ci,
                            kMaxDecisiveWidth * std::max(1.0, range))});
  return out;
}

void CheckPruningLaw(const ProbingInstance& instance,
                     std::span<const double> x, double b, long runs,
                     RandomSource& rng, Report* report) {
  const PreparedScheme scheme(instance, {x.begin(), x.end()}, b);
  std::vector<uint64_t> pruned(runs), plain(runs);
  for (long t = 0; t < runs; ++t) {
    const SchemeRun run = RunSchemeWithPruning(scheme, instance.objective(), rng);
    pruned[t] = (run.output | run.virt).bits();
    plain[t] = scheme.Run(SampleROfX(x, rng), rng).output.bits();
  }
  const ChiSquareResult chi = ChiSquareEqual(pruned, plain);
  report->Add({"chi-square p-value (dof " + std::to_string(chi.dof) + ")",
               "pruning-law", chi.p_value, 0.01, 0.0, runs,
               chi.p_value >= 0.01 ? Verdict::kPass : Verdict::kFail});
}

void CheckKSet(const KSetInstance& instance, long runs, RandomSource& rng,
               Report* report) {
  double lp = 0.0;
  const auto x = SolveKSetLp(instance, &lp);
  const PreparedKSet prepared(instance, x);
  const int n = instance.size();
  const int k = instance.k();
  std::vector<long> hits(n, 0);
  long violations = 0;
  double total = 0.0;
  for (long t = 0; t < runs; ++t) {
    const KSetRun run = prepared.Run(rng);
    for (int e : run.probed) ++hits[e];
    for (int j = 0; j < instance.dims(); ++j) {
      violations += run.load[j] > instance.capacity()[j];
    }
    total += run.value;
  }
  const double ci = HoeffdingHalfWidth(runs);
  for (int e = 0; e < n; ++e) {
    if (x[e] <= 0) continue;
    const double est = Frequency(hits[e], runs);
    const double bound = x[e] / (k + 1);
    report->Add({"column " + std::to_string(e), "kset-probe", est, bound, ci,
                 runs, JudgeAtLeast(est, bound, ci)});
  }
  report->Add(CountRow("capacity violations", "kset-probe", violations, runs));

  double range = 0.0;
  for (const KSetColumn& column : instance.columns()) {
    double best = 0.0;
    for (const KSetOutcome& o : column.outcomes) best = std::max(best, o.value);
    range += best;
  }
  const double mean = total / static_cast<double>(runs);
  const double value_ci = HoeffdingHalfWidth(runs, 0.99, std::max(range, 1e-12));
  const double bound = lp / (k + 1);
  report->Add({"expected value", "kset-probe", mean, bound, value_ci, runs,
               JudgeAtLeast(mean, bound, value_ci,
                            kMaxDecisiveWidth * std::max(1.0, range))});
}

void CheckMatching(const MatchingInstance& instance, long runs,
                   RandomSource& rng, Report* report, long min_conditional) {
  double lp = 0.0;
  const auto x = SolveMatchingLp(instance, &lp);
  const int m = instance.num_edges();
  const int nodes = instance.num_nodes();
  const auto pairs = instance.NodePairs();
  const auto& edges = instance.edges();

  // Edges sharing an endpoint with e, and each node's degree cap.
  std::vector<std::vector<int>> adjacent(m);
  for (int e = 0; e < m; ++e) {
    const auto [u, v] = instance.Endpoints(e);
    for (int node : {u, v}) {
      for (int f : instance.Incident(node)) {
        if (f != e) adjacent[e].push_back(f);
      }
    }
  }
  std::vector<int> cap(nodes);
  for (int v = 0; v < nodes; ++v) {
    double sum = 0.0;
    for (int e : instance.Incident(v)) sum += x[e];
    cap[v] = std::min(static_cast<int>(std::ceil(sum - 1e-9)),
                      instance.patience()[v]);
  }
  // Subsets of incident edges with at least two members, per node.
  std::vector<std::vector<uint32_t>> ones(nodes), zeros(nodes);
  for (int v = 0; v < nodes; ++v) {
    const int deg = static_cast<int>(instance.Incident(v).size());
    if (deg > 12) throw CapabilityError("negative correlation check needs degree <= 12");
    ones[v].assign(size_t{1} << deg, 0);
    zeros[v].assign(size_t{1} << deg, 0);
  }

  std::vector<long> rounded(m, 0), probed(m, 0);
  std::vector<double> adjacent_load(m, 0.0);
  long degree_violations = 0;
  double weight = 0.0;
  auto short_of_samples = [&] {
    for (int e = 0; e < m; ++e) {
      if (x[e] > 0 && rounded[e] < min_conditional) return true;
    }
    return false;
  };
  long total = 0;
  for (; total < runs || (total < 20 * runs && short_of_samples()); ++total) {
    const auto r = GkpsRound(nodes, pairs, x, rng);
    const MatchingRun run = RunMatching(instance, r, rng);
    weight += run.weight;
    for (int e = 0; e < m; ++e) {
      if (!r[e]) continue;
      ++rounded[e];
      probed[e] += run.probed[e];
      for (int f : adjacent[e]) adjacent_load[e] += r[f] ? edges[f].p : 0.0;
    }
    for (int v = 0; v < nodes; ++v) {
      const auto& inc = instance.Incident(v);
      uint32_t bits = 0;
      for (size_t i = 0; i < inc.size(); ++i) bits |= uint32_t{r[inc[i]] ? 1u : 0u} << i;
      degree_violations += std::popcount(bits) > cap[v];
      const uint32_t full = (uint32_t{1} << inc.size()) - 1;
      for (uint32_t s = 3; s <= full; ++s) {
        if (std::popcount(s) < 2) continue;
        ones[v][s] += (bits & s) == s;
        zeros[v][s] += (bits & s) == 0;
      }
    }
  }

  const double ci = HoeffdingHalfWidth(total);
  for (int e = 0; e < m; ++e) {
    const std::string label = "edge " + std::to_string(e);
    const double marginal = Frequency(rounded[e], total);
    report->Add({label + " marginal", "matching-rounding", marginal, x[e], ci,
                 total, JudgeWithin(marginal, x[e], ci)});
    if (x[e] <= 0) continue;
    const long count = rounded[e];
    const double cond_ci = count > 0 ? HoeffdingHalfWidth(count) : 1.0;
    const double est = Frequency(probed[e], count);
    report->Add({label + " probed given rounded", "matching-probe", est,
                 1.0 / 3.0, cond_ci, count, JudgeAtLeast(est, 1.0 / 3.0, cond_ci)});
    double range = 0.0;
    for (int f : adjacent[e]) range += edges[f].p;
    const double load = count > 0 ? adjacent_load[e] / count : 0.0;
    const double load_ci =
        count > 0 && range > 0 ? HoeffdingHalfWidth(count, 0.99, range) : 0.0;
    const double load_bound = 2.0 - 2.0 * edges[e].p * x[e];
    report->Add({label + " adjacent load given rounded", "matching-rounding",
                 load, load_bound, load_ci, count,
                 count > 0 ? JudgeAtMost(load, load_bound, load_ci,
                                         kMaxDecisiveWidth * std::max(1.0, range))
                           : Verdict::kInconclusive});
  }
  report->Add(CountRow("degree violations", "matching-rounding",
                       degree_violations, total));
  for (int v = 0; v < nodes; ++v) {
    const auto& inc = instance.Incident(v);
    if (inc.size() < 2) continue;
    for (int value : {1, 0}) {
      double worst = -1.0;
      const auto& counts = value ? ones[v] : zeros[v];
      for (uint32_t s = 3; s < counts.size(); ++s) {
        if (std::popcount(s) < 2) continue;
        double product = 1.0;
        for (size_t i = 0; i < inc.size(); ++i) {
          if (s >> i & 1) product *= value ? x[inc[i]] : 1.0 - x[inc[i]];
        }
        worst = std::max(worst, Frequency(counts[s], total) - product);
      }
      report->Add({"node " + std::to_string(v) + " joint " +
                       std::to_string(value) + " excess",
                   "matching-rounding", worst, 0.0, ci, total,
                   JudgeAtMost(worst, 0.0, ci)});
    }
  }
  double total_weight = 0.0;
  for (const MatchingEdge& edge : edges) total_weight += edge.w;
  const double mean = weight / static_cast<double>(total);
  const double weight_ci = HoeffdingHalfWidth(total, 0.99, total_weight);
  const double bound = (1.0 / 3.0 - 0.01) * lp;
  report->Add({"matched weight", "matching-probe", mean, bound, weight_ci, total,
               JudgeAtLeast(mean, bound, weight_ci,
                            kMaxDecisiveWidth * std::max(1.0, total_weight))});
}

void CheckCombined(const Matroid& outer, const Matroid& inner,
                   std::span<const double> x, std::span<const double> p,
                   long runs, RandomSource& rng, Report* report) {
  const int n = outer.ground_size();
  std::vector<double> px(n);
  for (int e = 0; e < n; ++e) px[e] = p[e] * x[e];
  const auto c_out = ExactGreedyBalance(outer, x);
  const auto c_in = ExactGreedyBalance(inner, px);
  const RandomOrderGreedyScheme outer_scheme(outer), inner_scheme(inner);
  const CombinedScheme combined(outer_scheme, inner_scheme);
  const double ci = HoeffdingHalfWidth(runs);
  for (int e = 0; e < n; ++e) {
    if (x[e] <= 0 || p[e] <= 0) continue;
    long hits = 0;
    for (long t = 0; t < runs; ++t) {
      const ElementSet a = SampleROfX(x, rng).With(e);
      hits += combined.Run(a, p, rng, e).output.Contains(e);
    }
    const double est = Frequency(hits, runs);
    const double bound = c_out[e] * c_in[e];
    report->Add({ElementLabel(e), "combined-balance", est, bound, ci, runs,
                 JudgeAtLeast(est, bound, ci)});
  }
}

}  // namespace probing
