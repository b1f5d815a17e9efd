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

#include "pcsi/gmpc/gmpc_json.hpp"

#include "../model/json_internal.hpp"
#include "pcsi/error.hpp"

namespace pcsi {

using detail::get_field;
using detail::Json;
using detail::OrderedJson;

namespace {

GmpcTrace trace_from(const Json& j) {
  GmpcTrace t;
  t.l_star = get_field<uint32_t>(j, "l_star");
  t.branch = parse_gmpc_branch(get_field<std::string>(j, "branch"));
  const Json& a = j.at("assignments");
  t.overlap_assignment = get_field<std::vector<Index>>(a, "overlap");
  t.block_assignment = get_field<std::vector<Index>>(a, "block");
  t.rest_assignment = get_field<std::vector<Index>>(a, "rest");
  if (j.contains("weight")) t.weight = Rational::parse(get_field<std::string>(j, "weight"));
  return t;
}

}  // namespace

std::string gmpc_trace_to_json(const GmpcTrace& t) {
  OrderedJson j;
  j["l_star"] = t.l_star;
  j["branch"] = to_string(t.branch);
  OrderedJson a;
  a["overlap"] = t.overlap_assignment;
  a["block"] = t.block_assignment;
  a["rest"] = t.rest_assignment;
  j["assignments"] = std::move(a);
  if (!t.weight.is_zero()) j["weight"] = t.weight.to_string();
  return j.dump();
}

GmpcTrace gmpc_trace_from_json(std::string_view text) {
  try {
    return trace_from(detail::parse_json(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad GMPC trace JSON: ") + e.what());
  }
}

GmpcFixture gmpc_fixture_from_json(std::string_view text) {
  try {
    Json j = detail::parse_json(text);
    if (get_field<std::string>(j, "protocol") != "gmpc") {
      throw Error("fixture is not a GMPC run");
    }
    ProblemInstance inst = detail::instance_from(j.at("instance"));
    DemandTuple t = detail::tuple_from(j.at("demand"), j.at("side_information"), inst);
    std::string title = j.contains("title") ? get_field<std::string>(j, "title") : "";
    return GmpcFixture{title, inst, std::move(t), trace_from(j.at("trace"))};
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad GMPC fixture JSON: ") + e.what());
  }
}

}  // namespace pcsi
