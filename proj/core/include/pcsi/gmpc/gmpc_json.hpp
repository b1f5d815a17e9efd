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

#ifndef PCSI_GMPC_GMPC_JSON_HPP_
#define PCSI_GMPC_GMPC_JSON_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "pcsi/gmpc/gmpc.hpp"

namespace pcsi {

// {"l_star":1,"branch":"beta","assignments":{"overlap":[..],"block":[..],"rest":[..]}}
// plus "weight" when the trace carries one.
std::string gmpc_trace_to_json(const GmpcTrace& trace);
GmpcTrace gmpc_trace_from_json(std::string_view text);

// A scripted GMPC run: instance, demand, side information and trace.
struct GmpcFixture {
  std::string title;
  ProblemInstance instance;
  DemandTuple tuple;
  GmpcTrace trace;
};

GmpcFixture gmpc_fixture_from_json(std::string_view text);

}  // namespace pcsi

#endif  // PCSI_GMPC_GMPC_JSON_HPP_
