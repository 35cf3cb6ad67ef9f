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


// probing_cli: instance generation and the verification pipelines.
//
// Exit status: 0 pass, 1 fail, 2 usage, 3 inconclusive, 4 bad input or
// I/O, 5 bad configuration, 6 unsupported instance, 7 infeasible point,
// 8 inconsistent data, 9 internal invariant violated.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "probing/errors.h"
#include "probing/experiments.h"
#include "probing/generator.h"
#include "probing/io.h"
#include "probing/oracles.h"
#include "probing/polytope.h"
#include "probing/random.h"
#include "probing/stoch_cr.h"

namespace probing {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitUsage = 2;

struct Options {
  std::string instance;
  std::string gen;
  std::optional<uint64_t> seed;
  long runs = 0;
  double b = 0.0;
  double delta = 0.01;
  long samples = 0;
  std::string out;
  std::string format = "csv";
  std::string kind = "probing";
  std::string dump;
};

// "a=1,b=2" into a map; ConfigError on items without '='.
std::map<std::string, std::string> ParsePairs(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("generator spec item '" + item + "' lacks '='");
    }
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

template <typename T>
T Take(std::map<std::string, std::string>& pairs, const std::string& key,
       T fallback) {
  const auto it = pairs.find(key);
  if (it == pairs.end()) return fallback;
  std::istringstream in(it->second);
  T value{};
  if (!(in >> value) || !in.eof()) {
    throw ConfigError("bad value for generator key '" + key + "'");
  }
  pairs.erase(it);
  return value;
}

void RejectLeftovers(const std::map<std::string, std::string>& pairs) {
  if (!pairs.empty()) {
    throw ConfigError("unknown generator key '" + pairs.begin()->first + "'");
  }
}

RandomSource Rng(const Options& o) { return RandomSource(o.seed.value_or(0)); }

void NeedSource(const Options& o) {
  if (o.instance.empty() == o.gen.empty()) {
    throw ConfigError("give exactly one of --instance and --gen");
  }
}

ProbingInstance LoadProbing(const Options& o, RandomSource& rng) {
  NeedSource(o);
  if (!o.instance.empty()) return InstanceFromJson(ReadJsonFile(o.instance));
  return GenerateInstance(ParseGeneratorSpec(o.gen), rng);
}

KSetInstance LoadKSet(const Options& o, RandomSource& rng) {
  NeedSource(o);
  if (!o.instance.empty()) return KSetFromJson(ReadJsonFile(o.instance));
  auto pairs = ParsePairs(o.gen);
  const int n = Take(pairs, "n", 8);
  const int d = Take(pairs, "d", 5);
  const int k = Take(pairs, "k", 2);
  RejectLeftovers(pairs);
  return GenerateKSet(n, d, k, rng);
}

MatchingInstance LoadMatching(const Options& o, RandomSource& rng) {
  NeedSource(o);
  if (!o.instance.empty()) return MatchingFromJson(ReadJsonFile(o.instance));
  auto pairs = ParsePairs(o.gen);
  const int left = Take(pairs, "left", 4);
  const int right = Take(pairs, "right", 5);
  const double density = Take(pairs, "density", 0.6);
  RejectLeftovers(pairs);
  return GenerateMatching(left, right, density, rng);
}

std::string OutputDir(const Options& o) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv("PROBING_OUT_DIR")) return env;
  return ".";
}

// Reports are never overwritten: a numeric suffix picks a fresh name.
std::string FreshStem(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  std::string stem = (fs::path(dir) / name).string();
  for (int i = 2; fs::exists(stem + ".csv") || fs::exists(stem + ".json"); ++i) {
    stem = (fs::path(dir) / (name + "-" + std::to_string(i))).string();
  }
  return stem;
}

int Emit(const Report& report, const std::string& command, const Options& o) {
  const std::string name =
      command + (o.seed ? "-seed" + std::to_string(*o.seed) : "");
  std::string stem;
  try {
    stem = FreshStem(OutputDir(o), name);
  } catch (const fs::filesystem_error& err) {
    throw InputDomainError(std::string("cannot create report directory: ") +
                           err.what());
  }
  WriteTextFile(stem + ".csv", report.ToCsv());
  WriteTextFile(stem + ".json", report.ToJson());
  std::cout << (o.format == "json" ? report.ToJson() : report.ToCsv());
  std::cerr << command << ": " << ToString(report.Overall()) << " (reports at "
            << stem << ".{csv,json})\n";
  return report.ExitCode();
}

int Generate(const Options& o) {
  RandomSource rng = Rng(o);
  json j;
  if (o.kind == "probing") {
    j = InstanceToJson(GenerateInstance(ParseGeneratorSpec(o.gen), rng));
  } else if (o.kind == "kset") {
    Options copy = o;
    copy.instance.clear();
    j = KSetToJson(LoadKSet(copy, rng));
  } else if (o.kind == "matching") {
    Options copy = o;
    copy.instance.clear();
    j = MatchingToJson(LoadMatching(copy, rng));
  } else {
    throw ConfigError("unknown instance kind '" + o.kind + "'");
  }
  const std::string text = j.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    WriteTextFile(o.out, text);
  }
  return 0;
}

int VerifyScheme(const Options& o) {
  RandomSource rng = Rng(o);
  const ProbingInstance inst = LoadProbing(o, rng);
  const auto x = RandomPointInP(ProbingPolytope(inst), 3, o.b, rng);
  Report report;
  CheckSchemeBalance(inst, x, o.b, o.runs, rng, &report);
  return Emit(report, "verify-scheme", o);
}

int VerifyMapping(const Options& o) {
  RandomSource rng = Rng(o);
  const ProbingInstance inst = LoadProbing(o, rng);
  const auto x = RandomPointInP(ProbingPolytope(inst), 3, o.b, rng);
  if (!o.dump.empty()) {
    // One run with the supports, critical sets and blocking sets after
    // every pick.
    const PreparedScheme scheme(inst, x, o.b);
    json steps = json::array();
    RunOptions options;
    options.observer = [&](const StepView& view) {
      json states = json::array();
      for (size_t j = 0; j < view.states->size(); ++j) {
        states.push_back(StateToJson((*view.states)[j], (*view.critical)[j]));
      }
      steps.push_back({{"pick", view.pick},
                       {"element", view.element},
                       {"was_available", view.was_available},
                       {"success", view.success},
                       {"available", view.available.ToVector()},
                       {"matroids", states}});
    };
    RandomSource dump_rng = rng.Split(1);
    const SchemeRun run = scheme.Run(SampleROfX(x, dump_rng), dump_rng, options);
    json initial = json::array();
    for (int j = 0; j < scheme.num_matroids(); ++j) {
      initial.push_back(StateToJson(scheme.initial_state(j), run.critical[j]));
    }
    WriteTextFile(o.dump, json({{"x", x},
                                {"b", o.b},
                                {"input", run.input.ToVector()},
                                {"initial", initial},
                                {"steps", steps},
                                {"output", run.output.ToVector()}})
                                  .dump(2) +
                              "\n");
  }
  Report report;
  CheckMappingProperties(inst, x, o.b, o.runs, rng, &report);
  CheckBlockingSets(inst, x, o.b, o.runs, rng, &report);
  return Emit(report, "verify-mapping", o);
}

GreedyConfig MakeGreedyConfig(const Options& o, double b) {
  GreedyConfig config;
  config.b = b;
  config.delta = o.delta;
  if (o.samples > 0) {
    config.gradient = GreedyConfig::Gradient::kSampled;
    config.samples = o.samples;
  }
  return config;
}

int Greedy(const Options& o) {
  RandomSource rng = Rng(o);
  const ProbingInstance inst = LoadProbing(o, rng);
  Report report;
  const GreedyResult result =
      CheckMeasuredGreedy(inst, MakeGreedyConfig(o, o.b), rng, &report);
  for (int e = 0; e < inst.size(); ++e) {
    report.Add({"y element " + std::to_string(e), "greedy-output", result.y[e],
                result.x[e], 0.0, 0, Verdict::kPass});
  }
  return Emit(report, "greedy", o);
}

int EndToEndCommand(const Options& o) {
  RandomSource rng = Rng(o);
  const ProbingInstance inst = LoadProbing(o, rng);
  double b = o.b;
  if (b <= 0) {
    const int k = inst.k_in() + inst.k_out();
    b = std::round(2.0 / (std::sqrt(1.0 + 4.0 * k) + 1.0) / o.delta) * o.delta;
  }
  Report report;
  CheckEndToEnd(inst, MakeGreedyConfig(o, b), o.runs, rng, &report);
  return Emit(report, "e2e", o);
}

int KSetCommand(const Options& o) {
  RandomSource rng = Rng(o);
  const KSetInstance inst = LoadKSet(o, rng);
  Report report;
  CheckKSet(inst, o.runs, rng, &report);
  return Emit(report, "kset", o);
}

int MatchingCommand(const Options& o) {
  RandomSource rng = Rng(o);
  const MatchingInstance inst = LoadMatching(o, rng);
  Report report;
  // Rarely rounded edges get extra runs so their conditional rows decide.
  CheckMatching(inst, o.runs, rng, &report, 10000);
  return Emit(report, "matching", o);
}

int Relaxation(const Options& o) {
  RandomSource rng = Rng(o);
  const ProbingInstance inst = LoadProbing(o, rng);
  Report report;
  CheckRelaxation(inst, &report);
  return Emit(report, "relaxation", o);
}

int Run(int argc, char** argv) {
  CLI::App app{"Stochastic probing: instance generation and verification"};
  app.require_subcommand(1);
  Options o;

  auto add_source = [&](CLI::App* cmd) {
    cmd->add_option("--instance", o.instance, "instance JSON file");
    cmd->add_option("--gen", o.gen, "generator spec, e.g. n=6,k_in=1,k_out=1");
  };
  auto add_seed = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--seed", o.seed, "random seed");
    if (required) opt->required();
  };
  auto add_runs = [&](CLI::App* cmd, long fallback) {
    o.runs = fallback;
    cmd->add_option("--runs", o.runs, "Monte Carlo runs")
        ->check(CLI::Range(1L, 1000000000L));
  };
  auto add_b = [&](CLI::App* cmd, double fallback) {
    cmd->add_option("--b", o.b, "scaling b in (0, 1]")
        ->default_val(fallback)
        ->check(CLI::Range(1e-9, 1.0));
  };
  auto add_delta = [&](CLI::App* cmd) {
    cmd->add_option("--delta", o.delta, "greedy step size in (0, 1]")
        ->default_val(0.01)
        ->check(CLI::Range(1e-9, 1.0));
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out,
                    "report directory (default $PROBING_OUT_DIR or .)");
    cmd->add_option("--format", o.format, "stdout format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* generate = app.add_subcommand("generate", "write a random instance");
  generate->add_option("--gen", o.gen, "generator spec");
  add_seed(generate, true);
  generate->add_option("--kind", o.kind, "probing, kset or matching")
      ->check(CLI::IsMember({"probing", "kset", "matching"}));
  generate->add_option("--out", o.out, "output file (default stdout)");

  auto* verify_scheme =
      app.add_subcommand("verify-scheme", "per-element balance of the scheme");
  add_source(verify_scheme);
  add_seed(verify_scheme, true);
  add_runs(verify_scheme, 100000);
  add_b(verify_scheme, 1.0);
  add_output(verify_scheme);

  auto* verify_mapping = app.add_subcommand(
      "verify-mapping", "mapping invariants and blocking-set expectations");
  add_source(verify_mapping);
  add_seed(verify_mapping, true);
  add_runs(verify_mapping, 10000);
  add_b(verify_mapping, 1.0);
  add_output(verify_mapping);
  verify_mapping->add_option("--dump", o.dump,
                             "write a per-step JSON dump of one run");

  auto* greedy = app.add_subcommand("greedy", "measured continuous greedy");
  add_source(greedy);
  add_seed(greedy, true);
  add_b(greedy, 1.0);
  add_delta(greedy);
  greedy->add_option("--samples", o.samples,
                     "sampled gradient with this many samples per step");
  add_output(greedy);

  auto* e2e = app.add_subcommand("e2e", "greedy, scheme and pruning against OPT");
  add_source(e2e);
  add_seed(e2e, true);
  add_runs(e2e, 100000);
  e2e->add_option("--b", o.b, "scaling b (default: best for k_in + k_out)")
      ->check(CLI::Range(1e-9, 1.0));
  add_delta(e2e);
  e2e->add_option("--samples", o.samples, "sampled gradient samples");
  add_output(e2e);

  auto* kset = app.add_subcommand("kset", "stochastic k-set packing");
  add_source(kset);
  add_seed(kset, true);
  add_runs(kset, 100000);
  add_output(kset);

  auto* matching = app.add_subcommand("matching", "bipartite stochastic matching");
  add_source(matching);
  add_seed(matching, true);
  add_runs(matching, 100000);
  add_output(matching);

  auto* relaxation =
      app.add_subcommand("relaxation", "relaxation bound against brute force");
  add_source(relaxation);
  add_seed(relaxation, false);
  add_output(relaxation);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*generate) return Generate(o);
  if (*verify_scheme) return VerifyScheme(o);
  if (*verify_mapping) return VerifyMapping(o);
  if (*greedy) return Greedy(o);
  if (*e2e) return EndToEndCommand(o);
  if (*kset) return KSetCommand(o);
  if (*matching) return MatchingCommand(o);
  return Relaxation(o);
}

}  // namespace
}  // namespace probing

int main(int argc, char** argv) {
  using namespace probing;
  try {
    return Run(argc, argv);
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 5;
  } catch (const InputDomainError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return 4;
  } catch (const CapabilityError& err) {
    std::cerr << "unsupported: " << err.what() << "\n";
    return 6;
  } catch (const InfeasibilityError& err) {
    std::cerr << "infeasible: " << err.what() << "\n";
    return 7;
  } catch (const ConsistencyError& err) {
    std::cerr << "inconsistent: " << err.what() << "\n";
    return 8;
  } catch (const InvariantViolation& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 9;
  }
}
