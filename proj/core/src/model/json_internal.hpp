// Copyright 2026 The pcsi Authors
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

#ifndef PCSI_SRC_MODEL_JSON_INTERNAL_HPP_
#define PCSI_SRC_MODEL_JSON_INTERNAL_HPP_

#include <json.hpp>

#include "pcsi/error.hpp"

#include <string_view>
#include <vector>

#include "pcsi/model/instance.hpp"
#include "pcsi/model/query.hpp"
#include "pcsi/model/scenario.hpp"

namespace pcsi::detail {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

Json parse_json(std::string_view text);

OrderedJson instance_json(const ProblemInstance& inst);
ProblemInstance instance_from(const Json& j);

OrderedJson query_json(const Query& q);
Query query_from(const Json& j, const ProblemInstance& inst);

OrderedJson message_json(const Message& m);
Message message_from(const Json& j, const ProblemInstance& inst);

std::vector<FieldElement> elements_from(const Json& j, const ProblemInstance& inst);
std::vector<uint32_t> values_of(const std::vector<FieldElement>& v);

// Reads {"W":[..],"V":[..]} and {"S":[..],"U":[..]} style objects.
DemandTuple tuple_from(const Json& demand, const Json& side, const ProblemInstance& inst);

template <class T>
T get_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(std::string("missing JSON field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad JSON field '") + key + "': " + e.what());
  }
}

}  // namespace pcsi::detail

#endif  // PCSI_SRC_MODEL_JSON_INTERNAL_HPP_
