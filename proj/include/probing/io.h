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


// JSON encodings of instances and debug dumps. Parse errors raise
// InputDomainError with the offending path.

#ifndef PROBING_IO_H_
#define PROBING_IO_H_

#include <string>

#include <json.hpp>

#include "probing/instance.h"
#include "probing/kset.h"
#include "probing/matching.h"
#include "probing/matroid.h"
#include "probing/submodular.h"
#include "probing/transversal_exchange.h"

namespace probing {

nlohmann::json MatroidToJson(const Matroid& m);
Matroid MatroidFromJson(const nlohmann::json& j, int n);

nlohmann::json ObjectiveToJson(const SubmodularFunction& f);
SubmodularFunction ObjectiveFromJson(const nlohmann::json& j, int n);

nlohmann::json InstanceToJson(const ProbingInstance& instance);
ProbingInstance InstanceFromJson(const nlohmann::json& j);

nlohmann::json KSetToJson(const KSetInstance& instance);
KSetInstance KSetFromJson(const nlohmann::json& j);

nlohmann::json MatchingToJson(const MatchingInstance& instance);
MatchingInstance MatchingFromJson(const nlohmann::json& j);

// Supports, injections, critical sets and blocking sets of one matroid.
nlohmann::json StateToJson(const SupportState& state, const CriticalSets& c);

// Whole-file helpers; ReadJsonFile throws InputDomainError when the file
// is missing or malformed.
nlohmann::json ReadJsonFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace probing

#endif  // PROBING_IO_H_
