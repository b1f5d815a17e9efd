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

#include "pcsi/pcia/pcia_json.hpp"

#include "../model/json_internal.hpp"
#include "pcsi/error.hpp"

namespace pcsi {

using detail::get_field;
using detail::Json;
using detail::OrderedJson;

namespace {

PciaScript script_from(const Json& j) {
  PciaScript s;
  s.blocks = get_field<std::vector<std::vector<Index>>>(j, "blocks");
  if (j.contains("free_alphas")) {
    for (const auto& [key, vals] : j.at("free_alphas").items()) {
      uint32_t b = 0;
      try {
        b = static_cast<uint32_t>(std::stoul(key));
      } catch (const std::exception&) {
        throw Error("free_alphas key '" + key + "' is not a block number");
      }
      s.free_alphas[b] = vals.get<std::vector<uint32_t>>();
    }
  }
  return s;
}

}  // namespace

std::map<uint32_t, std::vector<uint32_t>> pcia_free_alphas(const PciaTrace& trace,
                                                          const Scenario& scenario) {
  std::map<uint32_t, std::vector<uint32_t>> out;
  for (size_t b = 0; b < trace.blocks.size(); ++b) {
    bool fixed = false;
    for (Index x : trace.blocks[b]) {
      for (Index w : scenario.W()) fixed = fixed || w == x;
      for (Index s : scenario.S()) fixed = fixed || s == x;
    }
    if (!fixed && b < trace.alphas.size()) out[static_cast<uint32_t>(b + 1)] = trace.alphas[b];
  }
  return out;
}

std::string pcia_trace_to_json(const PciaTrace& t) {
  OrderedJson j;
  j["blocks"] = t.blocks;
  OrderedJson a;
  a["J"] = t.alignment.J;
  a["I"] = t.alignment.I;
  a["H"] = t.alignment.H;
  a["c"] = t.alignment.c;
  j["alignment"] = std::move(a);
  j["alphas"] = t.alphas;
  j["free_draws"] = t.free_draws;
  j["csi_rejections"] = t.csi_rejections;
  if (!t.weight.is_zero()) j["weight"] = t.weight.to_string();
  return j.dump();
}

PciaScript pcia_script_from_json(std::string_view text) {
  try {
    return script_from(detail::parse_json(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad PC-IA trace JSON: ") + e.what());
  }
}

PciaFixture pcia_fixture_from_json(std::string_view text) {
  try {
    Json j = detail::parse_json(text);
    if (get_field<std::string>(j, "protocol") != "pcia") throw Error("fixture is not a PC-IA run");
    ProblemInstance inst = detail::instance_from(j.at("instance"));
    DemandTuple t = detail::tuple_from(j.at("demand"), j.at("side_information"), inst);
    PciaFixture f{j.contains("title") ? get_field<std::string>(j, "title") : "", inst,
                  std::move(t), script_from(j.at("trace")), {}};
    if (j.contains("reported_coefficients")) {
      f.reported_coefficients =
          get_field<std::vector<std::vector<uint32_t>>>(j, "reported_coefficients");
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad PC-IA fixture JSON: ") + e.what());
  }
}

StructureFixture structure_fixture_from_json(std::string_view text) {
  try {
    Json j = detail::parse_json(text);
    if (get_field<std::string>(j, "protocol") != "structure") {
      throw Error("fixture is not an answer-structure listing");
    }
    ProblemInstance inst = detail::instance_from(j.at("instance"));
    StructureFixture f{j.contains("title") ? get_field<std::string>(j, "title") : "", inst,
                       get_field<std::vector<Index>>(j, "pair"), {}};
    for (const auto& jc : j.at("cases")) {
      StructureCase c;
      c.name = get_field<std::string>(jc, "name");
      auto parts = get_field<std::vector<std::vector<Index>>>(jc, "parts");
      for (size_t l = 0; l < parts.size(); ++l) {
        QueryPart p;
        p.indices = parts[l];
        if (jc.contains("coeffs")) {
          p.coeffs = detail::elements_from(jc.at("coeffs").at(l), inst);
        } else {
          p.coeffs.assign(p.indices.size(), inst.element(1));
        }
        c.query.parts.push_back(std::move(p));
      }
      validate_query(c.query, inst);
      f.cases.push_back(std::move(c));
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad structure fixture JSON: ") + e.what());
  }
}

}  // namespace pcsi
