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

#ifndef PCSI_CAPACITY_CAPACITY_HPP_
#define PCSI_CAPACITY_CAPACITY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcsi/algebra/rational.hpp"

namespace pcsi {

enum class Setting { kIpcSi, kIpcCsi, kJpcSi, kJpcCsi };
enum class BoundKind { kExact, kLowerBound, kNotCovered };

std::string to_string(Setting s);
std::string to_string(BoundKind k);

// One table row. rate and cost are empty for not-covered entries; cost is
// the normalized download cost 1/rate.
struct CapacityEntry {
  uint32_t K = 0, M = 0, D = 0;
  std::string setting;
  std::optional<Rational> rate;
  std::optional<Rational> cost;
  BoundKind kind = BoundKind::kExact;
};

Rational ipc_capacity(uint32_t K, uint32_t M, uint32_t D);
Rational jpc_si_lower(uint32_t K, uint32_t M, uint32_t D);
// Empty unless floor(M/D)+1 divides K-M-D.
std::optional<Rational> jpc_csi_lower(uint32_t K, uint32_t M, uint32_t D);

// The four private-computation settings for one (K, M, D).
std::vector<CapacityEntry> capacity_entries(uint32_t K, uint32_t M, uint32_t D);
// capacity_entries for K = k_min..k_max, skipping K < M+D.
std::vector<CapacityEntry> capacity_grid(uint32_t k_min, uint32_t k_max, uint32_t M, uint32_t D);

// Private computation against the retrieval schemes it is compared with:
// IPC, IPIR-SI, JPC-SI, JPIR retrieve-two (M = D = 2 only) and JPIR with one
// coded side-information symbol.
std::vector<CapacityEntry> comparison_table(uint32_t K, uint32_t M, uint32_t D);

enum class TableFormat { kCsv, kJson, kText };
TableFormat parse_table_format(std::string_view text);
std::string format_table(const std::vector<CapacityEntry>& rows, TableFormat format);

}  // namespace pcsi

#endif  // PCSI_CAPACITY_CAPACITY_HPP_
