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

#ifndef PCSI_TESTS_SUPPORT_ORACLES_HPP_
#define PCSI_TESTS_SUPPORT_ORACLES_HPP_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pcsi/algebra/rational.hpp"
#include "pcsi/model/protocol.hpp"

namespace pcsi::testing {

std::string fixture_dir();
std::string read_fixture(const std::string& name);

// Every valid (W, V, S, U), listed directly from the definitions.
void for_each_tuple(const ProblemInstance& inst, const std::function<void(const DemandTuple&)>& fn);

// Query JSON -> (Pr(Q), W -> Pr(Q, W)), by explicit enumeration of tuples,
// protocol runs and free coefficient draws.
struct BruteQuery {
  Rational total{0};
  std::map<std::vector<Index>, Rational> by_w;
};
std::map<std::string, BruteQuery> brute_force_posteriors(const QueryProtocol& protocol);

// Element-by-element evaluation of every answer symbol.
std::vector<std::vector<uint32_t>> naive_answers(const Query& query,
                                                 const std::vector<Message>& dataset);

uint32_t naive_inverse(uint32_t a, uint32_t q);

// Rank over F_q by counting the distinct vectors in the row span.
size_t span_rank(const std::vector<std::vector<uint32_t>>& rows, uint32_t q);

}  // namespace pcsi::testing

#endif  // PCSI_TESTS_SUPPORT_ORACLES_HPP_
