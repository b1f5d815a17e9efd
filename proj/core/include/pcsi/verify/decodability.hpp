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

#ifndef PCSI_VERIFY_DECODABILITY_HPP_
#define PCSI_VERIFY_DECODABILITY_HPP_

#include <span>
#include <vector>

#include "pcsi/algebra/matrix.hpp"
#include "pcsi/algebra/rational.hpp"
#include "pcsi/model/instance.hpp"
#include "pcsi/model/query.hpp"

namespace pcsi {

// Answer forms and side-information forms over X_1..X_K.
struct LinearSystem {
  FqMatrix rows;
  FqMatrix side;
};

// True iff target is in the row span of rows and side together.
bool decodable(const LinearSystem& system, std::span<const uint32_t> target);

// Answer rows of the query plus unit rows e_j for j in S (uncoded side
// information).
LinearSystem system_with_side_rows(const Query& query, const ProblemInstance& inst,
                                   std::span<const Index> S);

// Answer rows plus the single row sum_k U[k] e_{S[k]} (coded side information).
LinearSystem system_with_coded_row(const Query& query, const ProblemInstance& inst,
                                   std::span<const Index> S, std::span<const uint32_t> U);

// Coefficient vector over X_1..X_K of sum_k V[k] X_{W[k]}.
std::vector<uint32_t> demand_form(uint32_t K, std::span<const Index> W,
                                  std::span<const uint32_t> V);

// 1/n for a query of n parts whose forms are linearly independent. Throws
// pcsi::Error otherwise.
Rational measured_rate(const Query& query, const ProblemInstance& inst);

}  // namespace pcsi

#endif  // PCSI_VERIFY_DECODABILITY_HPP_
