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

#ifndef PCSI_MODEL_JSON_IO_HPP_
#define PCSI_MODEL_JSON_IO_HPP_

#include <string>
#include <string_view>

#include "pcsi/model/instance.hpp"
#include "pcsi/model/query.hpp"
#include "pcsi/model/scenario.hpp"

namespace pcsi {

// {"parts":[{"indices":[...],"coeffs":[...]}]}, compact. Byte-identical
// output for equal queries.
std::string query_to_json(const Query& query);
Query query_from_json(std::string_view text, const ProblemInstance& inst);

// {"symbols":[[...],...]}
std::string answer_to_json(const Answer& answer);

// {"K":..,"M":..,"D":..,"q":..,"ell":..,"side_information":"coded"}
std::string instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(std::string_view text);

// Tuple, dataset and derived Y / X_S / Z.
std::string scenario_to_json(const Scenario& sc, const ProblemInstance& inst);
Scenario scenario_from_json(std::string_view text, const ProblemInstance& inst);

}  // namespace pcsi

#endif  // PCSI_MODEL_JSON_IO_HPP_
