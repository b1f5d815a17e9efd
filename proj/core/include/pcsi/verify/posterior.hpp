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

#ifndef PCSI_VERIFY_POSTERIOR_HPP_
#define PCSI_VERIFY_POSTERIOR_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcsi/algebra/rational.hpp"
#include "pcsi/model/protocol.hpp"
#include "pcsi/model/query.hpp"

namespace pcsi {

enum class PrivacyKind { kIndividual, kJoint };

std::string to_string(PrivacyKind kind);
PrivacyKind parse_privacy_kind(std::string_view text);

struct VerifyOptions {
  // Maximum number of (trace, coefficient draw) pairs.
  uint64_t budget = 1000000000;
  unsigned threads = 1;
  // Violating queries kept in the report (the count is always exact).
  size_t max_violations = 16;
  // Reachable queries whose posteriors are kept, in canonical order.
  size_t keep_queries = 0;
};

// Posterior of one query. Labels are single indices (individual privacy) or
// D-subsets (joint privacy), in increasing order.
struct QueryPosterior {
  Query query;
  Rational probability;
  std::vector<std::pair<std::vector<Index>, Rational>> posteriors;
  Rational max_deviation;
};

struct PosteriorReport {
  std::string protocol;
  PrivacyKind kind = PrivacyKind::kIndividual;
  uint32_t K = 0, M = 0, D = 0, q = 0;
  Rational target;
  uint64_t queries = 0;
  uint64_t layouts = 0;
  uint64_t traces = 0;
  uint64_t pairs = 0;
  Rational mass;
  uint64_t violating_queries = 0;
  Rational worst_deviation;
  std::vector<QueryPosterior> violations;
  std::vector<QueryPosterior> retained;

  bool pass() const { return violating_queries == 0 && mass == Rational(1); }
};

// Sees every distinct reachable query once: its parts and the coefficient
// values flattened part by part.
using QueryVisitor = std::function<void(const std::vector<std::vector<Index>>& parts,
                                        std::span<const uint32_t> coeffs)>;

// Exact posterior over every (W, V, S, U) tuple and every protocol run.
// Throws BudgetExceeded when the enumeration would exceed options.budget.
// A visitor forces single-threaded evaluation.
PosteriorReport verify_privacy(const QueryProtocol& protocol, PrivacyKind kind,
                               const VerifyOptions& options = {},
                               const QueryVisitor& visitor = nullptr);

PosteriorReport posterior_individual(const QueryProtocol& protocol,
                                     const VerifyOptions& options = {});
PosteriorReport posterior_joint(const QueryProtocol& protocol,
                                const VerifyOptions& options = {});

// Posterior of a single query, enumerating only runs that produce its
// layout. probability is zero for an unreachable query.
QueryPosterior posterior_for_query(const QueryProtocol& protocol, const Query& query,
                                   PrivacyKind kind, uint64_t budget = 1000000000);

// Injective byte key of a query's index structure.
std::string layout_key(const std::vector<std::vector<Index>>& parts);

}  // namespace pcsi

#endif  // PCSI_VERIFY_POSTERIOR_HPP_
