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

#ifndef PCSI_MODEL_QUERY_HPP_
#define PCSI_MODEL_QUERY_HPP_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcsi/algebra/matrix.hpp"
#include "pcsi/algebra/message.hpp"
#include "pcsi/model/instance.hpp"

namespace pcsi {

// One requested combination: sum_k coeffs[k] * X_{indices[k]}.
struct QueryPart {
  std::vector<Index> indices;
  std::vector<FieldElement> coeffs;

  friend bool operator==(const QueryPart&, const QueryPart&) = default;
};

struct Query {
  std::vector<QueryPart> parts;

  friend bool operator==(const Query&, const Query&) = default;
};

struct Answer {
  std::vector<Message> symbols;

  friend bool operator==(const Answer&, const Answer&) = default;
};

struct Term {
  Index index;
  FieldElement coef;

  friend bool operator==(const Term&, const Term&) = default;
};
using LinearForm = std::vector<Term>;

// Throws pcsi::Error on duplicate indices within a part, zero coefficients,
// mismatched lengths or out-of-range indices.
void validate_query(const Query& query, const ProblemInstance& inst);

Answer evaluate_answer(const Query& query, std::span<const Message> dataset);

LinearForm part_form(const QueryPart& part);

// sum_i c_i * A_i as a form sorted by index with zero terms dropped.
LinearForm combine_parts(const Query& query,
                         std::span<const std::pair<size_t, FieldElement>> combination);

// Terms in order, coefficient 1 omitted: "3X_2+X_4+X_1+5X_3". "0" if empty.
std::string format_linear_form(const LinearForm& form);

// Row i holds the coefficients of part i over X_1..X_K.
FqMatrix query_matrix(const Query& query, uint32_t K, const PrimeField& field);

// Index structure of the parts without coefficients.
std::vector<std::vector<Index>> query_layout(const Query& query);

}  // namespace pcsi

#endif  // PCSI_MODEL_QUERY_HPP_
