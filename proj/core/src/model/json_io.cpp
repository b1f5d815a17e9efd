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

#include "pcsi/model/json_io.hpp"

#include "json_internal.hpp"
#include "pcsi/error.hpp"

namespace pcsi {

namespace detail {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
}

OrderedJson instance_json(const ProblemInstance& inst) {
  OrderedJson j;
  j["K"] = inst.K();
  j["M"] = inst.M();
  j["D"] = inst.D();
  j["q"] = inst.q();
  j["ell"] = inst.ell();
  j["side_information"] = to_string(inst.mode());
  return j;
}

ProblemInstance instance_from(const Json& j) {
  SideInfo mode = SideInfo::kCoded;
  if (j.contains("side_information")) {
    mode = parse_side_info(get_field<std::string>(j, "side_information"));
  }
  uint32_t ell = j.contains("ell") ? get_field<uint32_t>(j, "ell") : 1;
  return ProblemInstance(get_field<uint32_t>(j, "K"), get_field<uint32_t>(j, "M"),
                         get_field<uint32_t>(j, "D"), get_field<uint64_t>(j, "q"),
                         ell, mode);
}

std::vector<uint32_t> values_of(const std::vector<FieldElement>& v) {
  std::vector<uint32_t> out;
  for (const auto& e : v) out.push_back(e.value());
  return out;
}

OrderedJson query_json(const Query& q) {
  OrderedJson parts = OrderedJson::array();
  for (const auto& p : q.parts) {
    OrderedJson jp;
    jp["indices"] = p.indices;
    jp["coeffs"] = values_of(p.coeffs);
    parts.push_back(std::move(jp));
  }
  OrderedJson j;
  j["parts"] = std::move(parts);
  return j;
}

std::vector<FieldElement> elements_from(const Json& j, const ProblemInstance& inst) {
  std::vector<FieldElement> out;
  if (!j.is_array()) throw Error("expected an array of field elements");
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) throw Error("field element must be a non-negative integer");
    uint64_t x = v.get<uint64_t>();
    if (x >= inst.q()) throw Error("field element " + std::to_string(x) + " not reduced mod q");
    out.push_back(inst.element(x));
  }
  return out;
}

Query query_from(const Json& j, const ProblemInstance& inst) {
  Query q;
  const Json& parts = j.at("parts");
  if (!parts.is_array()) throw Error("query parts must be an array");
  for (const auto& jp : parts) {
    QueryPart p;
    p.indices = get_field<std::vector<Index>>(jp, "indices");
    p.coeffs = elements_from(jp.at("coeffs"), inst);
    q.parts.push_back(std::move(p));
  }
  validate_query(q, inst);
  return q;
}

OrderedJson message_json(const Message& m) { return values_of(m.coords()); }

Message message_from(const Json& j, const ProblemInstance& inst) {
  auto c = elements_from(j, inst);
  if (c.size() != inst.ell()) throw Error("message length mismatch");
  return Message(std::move(c));
}

DemandTuple tuple_from(const Json& demand, const Json& side, const ProblemInstance& inst) {
  DemandTuple t;
  t.W = get_field<std::vector<Index>>(demand, "W");
  t.V = elements_from(demand.at("V"), inst);
  t.S = side.contains("S") ? get_field<std::vector<Index>>(side, "S") : std::vector<Index>{};
  t.U = side.contains("U") ? elements_from(side.at("U"), inst) : std::vector<FieldElement>{};
  validate_tuple(inst, t);
  return t;
}

}  // namespace detail

using detail::Json;
using detail::OrderedJson;

std::string query_to_json(const Query& query) { return detail::query_json(query).dump(); }

Query query_from_json(std::string_view text, const ProblemInstance& inst) {
  try {
    return detail::query_from(detail::parse_json(text), inst);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad query JSON: ") + e.what());
  }
}

std::string answer_to_json(const Answer& answer) {
  OrderedJson syms = OrderedJson::array();
  for (const auto& m : answer.symbols) syms.push_back(detail::message_json(m));
  OrderedJson j;
  j["symbols"] = std::move(syms);
  return j.dump();
}

std::string instance_to_json(const ProblemInstance& inst) {
  return detail::instance_json(inst).dump();
}

ProblemInstance instance_from_json(std::string_view text) {
  try {
    return detail::instance_from(detail::parse_json(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad instance JSON: ") + e.what());
  }
}

std::string scenario_to_json(const Scenario& sc, const ProblemInstance& inst) {
  OrderedJson j;
  j["instance"] = detail::instance_json(inst);
  OrderedJson data = OrderedJson::array();
  for (const auto& x : sc.dataset) data.push_back(detail::message_json(x));
  j["dataset"] = std::move(data);
  j["W"] = sc.W();
  j["V"] = detail::values_of(sc.V());
  j["S"] = sc.S();
  j["U"] = detail::values_of(sc.U());
  j["Y"] = detail::message_json(sc.Y);
  if (inst.mode() == SideInfo::kUncoded) {
    OrderedJson xs = OrderedJson::array();
    for (const auto& x : sc.X_S) xs.push_back(detail::message_json(x));
    j["X_S"] = std::move(xs);
  }
  j["Z"] = detail::message_json(sc.Z);
  return j.dump();
}

Scenario scenario_from_json(std::string_view text, const ProblemInstance& inst) {
  try {
    Json j = detail::parse_json(text);
    std::vector<Message> data;
    for (const auto& x : j.at("dataset")) data.push_back(detail::message_from(x, inst));
    DemandTuple t = detail::tuple_from(j, j, inst);
    Scenario sc = make_scenario(inst, std::move(data), std::move(t));
    if (j.contains("Z") && !(detail::message_from(j.at("Z"), inst) == sc.Z)) {
      throw Error("scenario Z disagrees with W, V");
    }
    if (j.contains("Y") && !(detail::message_from(j.at("Y"), inst) == sc.Y)) {
      throw Error("scenario Y disagrees with S, U");
    }
    return sc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad scenario JSON: ") + e.what());
  }
}

}  // namespace pcsi
