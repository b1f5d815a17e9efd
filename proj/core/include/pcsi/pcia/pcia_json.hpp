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

#ifndef PCSI_PCIA_PCIA_JSON_HPP_
#define PCSI_PCIA_PCIA_JSON_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pcsi/pcia/pcia.hpp"

namespace pcsi {

// {"blocks":[[..],..],"alignment":{J,I,H,c},"alphas":[[..],..],"free_draws":[..],
// "csi_rejections":n} plus "weight" when set.
std::string pcia_trace_to_json(const PciaTrace& trace);

struct PciaScript {
  std::vector<std::vector<Index>> blocks;
  std::map<uint32_t, std::vector<uint32_t>> free_alphas;
};
// Reads "blocks" and, when present, "free_alphas":{"1":[..],..}.
PciaScript pcia_script_from_json(std::string_view text);

// The free coefficients of a trace keyed by block.
std::map<uint32_t, std::vector<uint32_t>> pcia_free_alphas(const PciaTrace& trace,
                                                          const Scenario& scenario);

struct PciaFixture {
  std::string title;
  ProblemInstance instance;
  DemandTuple tuple;
  PciaScript script;
  // Coefficients as originally printed for the example, per part; may differ
  // from the recomputed query.
  std::vector<std::vector<uint32_t>> reported_coefficients;
};
PciaFixture pcia_fixture_from_json(std::string_view text);

// Answer structures given only by their supports (coefficients default to 1).
struct StructureCase {
  std::string name;
  Query query;
};
struct StructureFixture {
  std::string title;
  ProblemInstance instance;
  std::vector<Index> pair;
  std::vector<StructureCase> cases;
};
StructureFixture structure_fixture_from_json(std::string_view text);

}  // namespace pcsi

#endif  // PCSI_PCIA_PCIA_JSON_HPP_
