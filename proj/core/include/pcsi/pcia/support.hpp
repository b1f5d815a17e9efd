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

#ifndef PCSI_PCIA_SUPPORT_HPP_
#define PCSI_PCIA_SUPPORT_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pcsi/model/instance.hpp"
#include "pcsi/model/query.hpp"

namespace pcsi {

// SI: some combination of answers has support P with W* in P and
// D <= |P| <= M+D. CSI: the same with |P| = M+D exactly.
enum class SupportMode { kSI, kCSI };

std::string to_string(SupportMode mode);
// Coded side information -> CSI, uncoded -> SI.
SupportMode support_mode_for(const ProblemInstance& inst);

struct SubsetSupport {
  std::vector<Index> w_star;
  bool pass = false;
  // Smallest |P| over combinations whose support contains W*, 0 if none.
  uint32_t best_size = 0;
  // Combination coefficients (one per answer) of the witness, or of a
  // smallest containing support when the requirement fails.
  std::vector<uint32_t> witness;
  std::vector<Index> witness_support;
};

struct SupportReport {
  SupportMode mode = SupportMode::kSI;
  bool pass = false;
  uint64_t combinations = 0;
  std::vector<SubsetSupport> subsets;  // every D-subset in lexicographic order
};

// Checks the requirement for every D-subset of [K] over all non-zero answer
// combinations (up to scaling). Throws BudgetExceeded when there are more
// than budget combinations.
SupportReport support_requirement_check(const Query& query, const ProblemInstance& inst,
                                        SupportMode mode, uint64_t budget = 10000000);

// The same for one subset.
SubsetSupport support_for_subset(const Query& query, const ProblemInstance& inst,
                                 SupportMode mode, std::span<const Index> w_star,
                                 uint64_t budget = 10000000);

}  // namespace pcsi

#endif  // PCSI_PCIA_SUPPORT_HPP_
