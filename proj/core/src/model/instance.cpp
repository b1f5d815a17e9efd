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

#include "pcsi/model/instance.hpp"

#include <cmath>
#include <sstream>

#include "pcsi/error.hpp"

namespace pcsi {

std::string to_string(SideInfo mode) {
  return mode == SideInfo::kCoded ? "coded" : "uncoded";
}

SideInfo parse_side_info(std::string_view text) {
  if (text == "coded") return SideInfo::kCoded;
  if (text == "uncoded") return SideInfo::kUncoded;
  throw Error("unknown side information mode '" + std::string(text) + "'");
}

ProblemInstance::ProblemInstance(uint32_t K, uint32_t M, uint32_t D, uint64_t q,
                                 uint32_t ell, SideInfo mode)
    : K_(K), M_(M), D_(D), ell_(ell), mode_(mode), field_(q) {
  if (D < 1) throw Error("D must be at least 1");
  if (uint64_t{M} + D > K) {
    throw Error("M + D must not exceed K (K=" + std::to_string(K) +
                ", M=" + std::to_string(M) + ", D=" + std::to_string(D) + ")");
  }
  if (ell < 1) throw Error("message length must be at least 1");
}

double ProblemInstance::message_bits() const {
  return ell_ * std::log2(static_cast<double>(q()));
}

std::string ProblemInstance::describe() const {
  std::ostringstream os;
  os << "K=" << K_ << " M=" << M_ << " D=" << D_ << " q=" << q()
     << " ell=" << ell_ << " side=" << to_string(mode_);
  return os.str();
}

}  // namespace pcsi
