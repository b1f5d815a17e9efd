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

#include "pcsi/model/query.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "pcsi/error.hpp"
#include "pcsi/model/scenario.hpp"

namespace pcsi {

void validate_query(const Query& query, const ProblemInstance& inst) {
  if (query.parts.empty()) throw Error("query has no parts");
  for (size_t l = 0; l < query.parts.size(); ++l) {
    const QueryPart& p = query.parts[l];
    if (p.indices.size() != p.coeffs.size()) {
      throw Error("query part " + std::to_string(l + 1) +
                  " has mismatched index and coefficient counts");
    }
    std::vector<Index> seen = p.indices;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      throw Error("query part " + std::to_string(l + 1) + " repeats an index");
    }
    for (size_t k = 0; k < p.indices.size(); ++k) {
      if (p.indices[k] < 1 || p.indices[k] > inst.K()) {
        throw Error("query index " + std::to_string(p.indices[k]) + " out of range");
      }
      if (p.coeffs[k].modulus() != inst.q() || p.coeffs[k].is_zero()) {
        throw Error("query coefficients must be non-zero in F_q");
      }
    }
  }
}

Answer evaluate_answer(const Query& query, std::span<const Message> dataset) {
  Answer a;
  for (const QueryPart& p : query.parts) {
    a.symbols.push_back(linear_combination(dataset, p.indices, p.coeffs));
  }
  return a;
}

LinearForm part_form(const QueryPart& part) {
  LinearForm f;
  for (size_t k = 0; k < part.indices.size(); ++k) {
    f.push_back(Term{part.indices[k], part.coeffs[k]});
  }
  return f;
}

LinearForm combine_parts(const Query& query,
                         std::span<const std::pair<size_t, FieldElement>> combination) {
  std::map<Index, FieldElement> acc;
  for (const auto& [part, c] : combination) {
    if (part >= query.parts.size()) throw Error("combination part out of range");
    const QueryPart& p = query.parts[part];
    for (size_t k = 0; k < p.indices.size(); ++k) {
      auto it = acc.find(p.indices[k]);
      FieldElement term = c * p.coeffs[k];
      if (it == acc.end()) {
        acc.emplace(p.indices[k], term);
      } else {
        it->second += term;
      }
    }
  }
  LinearForm f;
  for (const auto& [i, c] : acc)
    if (!c.is_zero()) f.push_back(Term{i, c});
  return f;
}

std::string format_linear_form(const LinearForm& form) {
  if (form.empty()) return "0";
  std::string out;
  for (size_t k = 0; k < form.size(); ++k) {
    if (k > 0) out += "+";
    if (form[k].coef.value() != 1) out += std::to_string(form[k].coef.value());
    out += "X_" + std::to_string(form[k].index);
  }
  return out;
}

FqMatrix query_matrix(const Query& query, uint32_t K, const PrimeField& field) {
  FqMatrix m(query.parts.size(), K, field);
  for (size_t l = 0; l < query.parts.size(); ++l) {
    const QueryPart& p = query.parts[l];
    for (size_t k = 0; k < p.indices.size(); ++k) {
      if (p.indices[k] < 1 || p.indices[k] > K) throw Error("query index out of range");
      m.set(l, p.indices[k] - 1, m.at(l, p.indices[k] - 1) + p.coeffs[k].value());
    }
  }
  return m;
}

std::vector<std::vector<Index>> query_layout(const Query& query) {
  std::vector<std::vector<Index>> out;
  for (const QueryPart& p : query.parts) out.push_back(p.indices);
  return out;
}

}  // namespace pcsi
