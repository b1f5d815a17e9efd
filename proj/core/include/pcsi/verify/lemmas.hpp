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

#ifndef PCSI_VERIFY_LEMMAS_HPP_
#define PCSI_VERIFY_LEMMAS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "pcsi/model/instance.hpp"
#include "pcsi/model/query.hpp"
#include "pcsi/pcia/support.hpp"
#include "pcsi/verify/posterior.hpp"

namespace pcsi {

// A (W*, V*, S*) under which the demand is decodable from the answers and
// the side information. In SI mode the side rows are e_j for j in S; in CSI
// mode the single row sum_k U[k] e_{S[k]}.
struct LemmaWitness {
  std::vector<Index> label;  // {i} for individual, W* for joint
  bool pass = false;
  std::vector<Index> W, S;
  std::vector<uint32_t> V, U;
  std::vector<uint32_t> combination;  // one coefficient per answer
};

struct LemmaReport {
  SupportMode mode = SupportMode::kSI;
  bool pass = false;
  std::vector<LemmaWitness> labels;
};

// For every index i, a witness with i in W*.
LemmaReport lemma1_condition(const Query& query, const ProblemInstance& inst,
                             SupportMode mode = SupportMode::kSI, uint64_t budget = 10000000);
// For every D-subset W*, a witness with that demand support.
LemmaReport lemma2_condition(const Query& query, const ProblemInstance& inst,
                             SupportMode mode = SupportMode::kSI, uint64_t budget = 10000000);

// Runs a lemma check over many queries. Queries whose answer combinations
// have the same family of supports share one full check.
class LemmaSweep {
 public:
  LemmaSweep(const ProblemInstance& inst, PrivacyKind kind, SupportMode mode);

  bool check(const Query& query);
  bool check(const std::vector<std::vector<Index>>& parts, std::span<const uint32_t> coeffs);

  uint64_t queries() const { return queries_; }
  uint64_t failures() const { return failures_; }
  uint64_t families() const { return cache_.size(); }
  const std::optional<Query>& first_failure() const { return first_failure_; }

 private:
  ProblemInstance inst_;
  PrivacyKind kind_;
  SupportMode mode_;
  std::map<std::vector<uint64_t>, bool> cache_;
  uint64_t queries_ = 0;
  uint64_t failures_ = 0;
  std::optional<Query> first_failure_;
};

}  // namespace pcsi

#endif  // PCSI_VERIFY_LEMMAS_HPP_
