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

#include "pcsi/verify/decodability.hpp"

#include "pcsi/error.hpp"

namespace pcsi {

bool decodable(const LinearSystem& system, std::span<const uint32_t> target) {
  const size_t K = system.rows.cols();
  if (target.size() != K || system.side.cols() != K) throw Error("dimension mismatch");
  FqMatrix all(0, K, system.rows.field());
  for (size_t i = 0; i < system.rows.rows(); ++i) all.append_row(system.rows.row(i));
  for (size_t i = 0; i < system.side.rows(); ++i) all.append_row(system.side.row(i));
  return in_row_span(all, target);
}

LinearSystem system_with_side_rows(const Query& query, const ProblemInstance& inst,
                                   std::span<const Index> S) {
  LinearSystem sys{query_matrix(query, inst.K(), inst.field()),
                   FqMatrix(0, inst.K(), inst.field())};
  std::vector<uint32_t> e(inst.K(), 0);
  for (Index j : S) {
    e[j - 1] = 1;
    sys.side.append_row(e);
    e[j - 1] = 0;
  }
  return sys;
}

LinearSystem system_with_coded_row(const Query& query, const ProblemInstance& inst,
                                   std::span<const Index> S, std::span<const uint32_t> U) {
  LinearSystem sys{query_matrix(query, inst.K(), inst.field()),
                   FqMatrix(0, inst.K(), inst.field())};
  if (!S.empty()) sys.side.append_row(demand_form(inst.K(), S, U));
  return sys;
}

std::vector<uint32_t> demand_form(uint32_t K, std::span<const Index> W,
                                  std::span<const uint32_t> V) {
  if (W.size() != V.size()) throw Error("support and coefficient lengths differ");
  std::vector<uint32_t> f(K, 0);
  for (size_t k = 0; k < W.size(); ++k) f[W[k] - 1] = V[k];
  return f;
}

Rational measured_rate(const Query& query, const ProblemInstance& inst) {
  validate_query(query, inst);
  const size_t n = query.parts.size();
  if (n == 0) throw Error("empty query");
  if (rank(query_matrix(query, inst.K(), inst.field())) != n) {
    throw Error("answer symbols dependent; entropy accounting invalid");
  }
  return Rational(1, static_cast<long>(n));
}

}  // namespace pcsi
