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


#include "probing/io.h"

#include <fstream>
#include <sstream>

#include "probing/errors.h"

namespace probing {

using nlohmann::json;

namespace {

// Typed field access with readable errors.
const json& Field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputDomainError(where + ": missing field '" + key + "'");
  }
  return j.at(key);
}

template <typename T>
T As(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception& err) {
    throw InputDomainError(where + ": " + err.what());
  }
}

json SetToJson(ElementSet s) { return s.ToVector(); }

ElementSet SetFromJson(const json& j, int n, const std::string& where) {
  ElementSet s;
  for (int e : As<std::vector<int>>(j, where)) {
    if (e < 0 || e >= n) {
      throw InputDomainError(where + ": element " + std::to_string(e) +
                             " out of range");
    }
    s.Insert(e);
  }
  return s;
}

}  // namespace

json MatroidToJson(const Matroid& m) {
  switch (m.kind()) {
    case Matroid::Kind::kTransversal: {
      const BipartiteGraph& g = m.TransversalGraph();
      json edges = json::array();
      for (int e = 0; e < g.num_elements; ++e) {
        for (int v : g.adjacency[e]) edges.push_back({e, v});
      }
      return {{"type", "transversal"},
              {"vertices", g.num_vertices},
              {"edges", edges}};
    }
    case Matroid::Kind::kUniform:
      return {{"type", "uniform"},
              {"rank", m.blocks()[0].capacity},
              {"subset", SetToJson(m.blocks()[0].elements)}};
    case Matroid::Kind::kPartition: {
      json blocks = json::array();
      for (const auto& b : m.blocks()) {
        blocks.push_back(
            {{"elements", SetToJson(b.elements)}, {"capacity", b.capacity}});
      }
      return {{"type", "partition"}, {"blocks", blocks}};
    }
    case Matroid::Kind::kEnumerated: {
      json family = json::array();
      for (ElementSet s : m.family()) family.push_back(SetToJson(s));
      return {{"type", "enumerated"}, {"independent", family}};
    }
  }
  throw InvariantViolation("unknown matroid kind");
}

Matroid MatroidFromJson(const json& j, int n) {
  const std::string type = As<std::string>(Field(j, "type", "matroid"),
                                           "matroid.type");
  if (type == "transversal") {
    const int vertices =
        As<int>(Field(j, "vertices", "transversal"), "transversal.vertices");
    auto edges = As<std::vector<std::pair<int, int>>>(
        Field(j, "edges", "transversal"), "transversal.edges");
    return Matroid::Transversal(n, vertices, edges);
  }
  if (type == "uniform") {
    const int rank = As<int>(Field(j, "rank", "uniform"), "uniform.rank");
    const ElementSet subset = j.contains("subset")
                                  ? SetFromJson(j.at("subset"), n, "uniform.subset")
                                  : ElementSet::Full(n);
    return Matroid::Uniform(n, rank, subset);
  }
  if (type == "partition") {
    std::vector<PartitionBlock> blocks;
    for (const json& b : Field(j, "blocks", "partition")) {
      blocks.push_back(
          {SetFromJson(Field(b, "elements", "partition.block"), n,
                       "partition.block.elements"),
           As<int>(Field(b, "capacity", "partition.block"),
                   "partition.block.capacity")});
    }
    return Matroid::Partition(n, std::move(blocks));
  }
  if (type == "enumerated") {
    std::vector<ElementSet> family;
    for (const json& s : Field(j, "independent", "enumerated")) {
      family.push_back(SetFromJson(s, n, "enumerated.independent"));
    }
    return Matroid::Enumerated(n, std::move(family));
  }
  throw InputDomainError("unknown matroid type '" + type + "'");
}

json ObjectiveToJson(const SubmodularFunction& f) {
  switch (f.kind()) {
    case SubmodularFunction::Kind::kLinear:
      return {{"type", "linear"}, {"weights", f.weights()}};
    case SubmodularFunction::Kind::kCoverage:
      return {{"type", "coverage"},
              {"item_weights", f.item_weights()},
              {"covers", f.covers()}};
    case SubmodularFunction::Kind::kCut: {
      json edges = json::array();
      for (const auto& e : f.cut_edges()) {
        edges.push_back({e.from, e.to, e.weight});
      }
      return {{"type", "cut"}, {"directed", f.directed()}, {"edges", edges}};
    }
    case SubmodularFunction::Kind::kTable: {
      json values = json::array();
      const auto table = f.ValueTable();
      for (size_t mask = 0; mask < table.size(); ++mask) {
        if (table[mask] != 0.0) values.push_back({mask, table[mask]});
      }
      return {{"type", "table"}, {"values", values}};
    }
  }
  throw InvariantViolation("unknown objective kind");
}

SubmodularFunction ObjectiveFromJson(const json& j, int n) {
  const std::string type =
      As<std::string>(Field(j, "type", "objective"), "objective.type");
  if (type == "linear") {
    auto w = As<std::vector<double>>(Field(j, "weights", "linear"),
                                     "linear.weights");
    if (static_cast<int>(w.size()) != n) {
      throw InputDomainError("linear.weights: need one weight per element");
    }
    return SubmodularFunction::Linear(std::move(w));
  }
  if (type == "coverage") {
    return SubmodularFunction::Coverage(
        n,
        As<std::vector<double>>(Field(j, "item_weights", "coverage"),
                                "coverage.item_weights"),
        As<std::vector<std::vector<int>>>(Field(j, "covers", "coverage"),
                                          "coverage.covers"));
  }
  if (type == "cut") {
    std::vector<CutEdge> edges;
    for (const json& e : Field(j, "edges", "cut")) {
      if (!e.is_array() || e.size() != 3) {
        throw InputDomainError("cut.edges: expected [from, to, weight]");
      }
      edges.push_back({As<int>(e[0], "cut.edges"), As<int>(e[1], "cut.edges"),
                       As<double>(e[2], "cut.edges")});
    }
    const bool directed =
        j.contains("directed") && As<bool>(j.at("directed"), "cut.directed");
    return SubmodularFunction::Cut(n, std::move(edges), directed);
  }
  if (type == "table") {
    if (n > 20) throw CapabilityError("table objectives limited to n <= 20");
    std::vector<double> values(size_t{1} << n, 0.0);
    for (const json& entry : Field(j, "values", "table")) {
      if (!entry.is_array() || entry.size() != 2) {
        throw InputDomainError("table.values: expected [mask, value]");
      }
      const auto mask = As<uint64_t>(entry[0], "table.values");
      if (mask >= values.size()) {
        throw InputDomainError("table.values: mask out of range");
      }
      values[mask] = As<double>(entry[1], "table.values");
    }
    return SubmodularFunction::Table(n, std::move(values));
  }
  throw InputDomainError("unknown objective type '" + type + "'");
}

json InstanceToJson(const ProbingInstance& instance) {
  json inner = json::array(), outer = json::array();
  for (const auto& m : instance.inner()) inner.push_back(MatroidToJson(m));
  for (const auto& m : instance.outer()) outer.push_back(MatroidToJson(m));
  return {{"elements", instance.size()},
          {"p", instance.p()},
          {"order", instance.order()},
          {"inner", inner},
          {"outer", outer},
          {"objective", ObjectiveToJson(instance.objective())}};
}

ProbingInstance InstanceFromJson(const json& j) {
  const int n = As<int>(Field(j, "elements", "instance"), "elements");
  if (n < 0 || n > kMaxElements) {
    throw InputDomainError("elements must lie in [0, 64]");
  }
  auto p = As<std::vector<double>>(Field(j, "p", "instance"), "p");
  std::vector<Matroid> inner, outer;
  if (j.contains("inner")) {
    for (const json& m : j.at("inner")) inner.push_back(MatroidFromJson(m, n));
  }
  if (j.contains("outer")) {
    for (const json& m : j.at("outer")) outer.push_back(MatroidFromJson(m, n));
  }
  std::vector<int> order;
  if (j.contains("order")) order = As<std::vector<int>>(j.at("order"), "order");
  return ProbingInstance(std::move(p), std::move(inner), std::move(outer),
                         ObjectiveFromJson(Field(j, "objective", "instance"), n),
                         std::move(order));
}

json KSetToJson(const KSetInstance& instance) {
  json columns = json::array();
  for (const auto& col : instance.columns()) {
    json outcomes = json::array();
    for (const auto& out : col.outcomes) {
      outcomes.push_back({{"prob", out.probability},
                          {"value", out.value},
                          {"size", SetToJson(out.size)}});
    }
    columns.push_back({{"coords", SetToJson(col.coords)}, {"outcomes", outcomes}});
  }
  return {{"capacity", instance.capacity()}, {"columns", columns}};
}

KSetInstance KSetFromJson(const json& j) {
  auto capacity =
      As<std::vector<int>>(Field(j, "capacity", "kset"), "kset.capacity");
  const int d = static_cast<int>(capacity.size());
  std::vector<KSetColumn> columns;
  for (const json& c : Field(j, "columns", "kset")) {
    KSetColumn col;
    col.coords = SetFromJson(Field(c, "coords", "kset.column"), d,
                             "kset.column.coords");
    for (const json& o : Field(c, "outcomes", "kset.column")) {
      col.outcomes.push_back(
          {As<double>(Field(o, "prob", "kset.outcome"), "kset.outcome.prob"),
           As<double>(Field(o, "value", "kset.outcome"), "kset.outcome.value"),
           SetFromJson(Field(o, "size", "kset.outcome"), d,
                       "kset.outcome.size")});
    }
    columns.push_back(std::move(col));
  }
  return KSetInstance(std::move(capacity), std::move(columns));
}

json MatchingToJson(const MatchingInstance& instance) {
  json edges = json::array();
  for (const auto& e : instance.edges()) {
    edges.push_back({{"u", e.left}, {"v", e.right}, {"p", e.p}, {"w", e.w}});
  }
  return {{"left", instance.num_left()},
          {"right", instance.num_right()},
          {"patience", instance.patience()},
          {"edges", edges}};
}

MatchingInstance MatchingFromJson(const json& j) {
  const int left = As<int>(Field(j, "left", "matching"), "matching.left");
  const int right = As<int>(Field(j, "right", "matching"), "matching.right");
  std::vector<MatchingEdge> edges;
  for (const json& e : Field(j, "edges", "matching")) {
    edges.push_back({As<int>(Field(e, "u", "matching.edge"), "edge.u"),
                     As<int>(Field(e, "v", "matching.edge"), "edge.v"),
                     As<double>(Field(e, "p", "matching.edge"), "edge.p"),
                     As<double>(Field(e, "w", "matching.edge"), "edge.w")});
  }
  std::vector<int> patience;
  if (j.contains("patience")) {
    patience = As<std::vector<int>>(j.at("patience"), "matching.patience");
  } else {
    patience.assign(left + right, 1);
  }
  return MatchingInstance(left, right, std::move(edges), std::move(patience));
}

json StateToJson(const SupportState& state, const CriticalSets& c) {
  json sets = json::array();
  for (int i = 0; i < state.num_sets(); ++i) {
    json injection = json::object();
    for (int e : state.set(i)) {
      injection[std::to_string(e)] = state.VertexOf(i, e);
    }
    sets.push_back({{"beta", state.beta(i)},
                    {"elements", SetToJson(state.set(i))},
                    {"injection", injection}});
  }
  json blocking = json::array();
  if (static_cast<int>(c.size()) == state.ground_size()) {
    for (ElementSet g : AllBlockingSets(state, c)) blocking.push_back(SetToJson(g));
  }
  return {{"sets", sets}, {"critical", c}, {"blocking", blocking}};
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputDomainError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& err) {
    throw InputDomainError(path + ": " + err.what());
  }
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputDomainError("cannot write " + path);
  out << text;
  if (!out) throw InputDomainError("write failed for " + path);
}

}  // namespace probing
