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

#ifndef PCSI_MODEL_INSTANCE_HPP_
#define PCSI_MODEL_INSTANCE_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "pcsi/algebra/prime_field.hpp"

namespace pcsi {

// Message indices are 1-based throughout.
using Index = uint32_t;

enum class SideInfo { kCoded, kUncoded };

std::string to_string(SideInfo mode);
SideInfo parse_side_info(std::string_view text);

class ProblemInstance {
 public:
  // Throws pcsi::Error unless 1 <= D, M + D <= K, ell >= 1 and q is prime.
  ProblemInstance(uint32_t K, uint32_t M, uint32_t D, uint64_t q,
                  uint32_t ell = 1, SideInfo mode = SideInfo::kCoded);

  uint32_t K() const { return K_; }
  uint32_t M() const { return M_; }
  uint32_t D() const { return D_; }
  uint32_t q() const { return field_.modulus(); }
  uint32_t ell() const { return ell_; }
  SideInfo mode() const { return mode_; }
  const PrimeField& field() const { return field_; }
  // L = ell * log2(q).
  double message_bits() const;

  FieldElement element(uint64_t v) const { return FieldElement(v, field_); }

  std::string describe() const;

 private:
  uint32_t K_, M_, D_, ell_;
  SideInfo mode_;
  PrimeField field_;
};

}  // namespace pcsi

#endif  // PCSI_MODEL_INSTANCE_HPP_
