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

#include "pcsi/pcia/support.hpp"

#include <bit>
#include <map>

#include "pcsi/algebra/combinatorics.hpp"
#include "pcsi/algebra/matrix.hpp"
#include "pcsi/error.hpp"

namespace pcsi {

namespace {

using SupportMap = std::map<uint64_t, std::vector<uint32_t>>;

SupportMap collect_supports(const Query& query, const ProblemInstance& inst, uint64_t budget,
                            uint64_t& combinations) {
  if (inst.K() > 64) throw Error("support check needs K <= 64");
  FqMatrix m = query_matrix(query, inst.K(), inst.field());
  SupportMap supports;
  combinations = 0;
  for_each_projective_combination(m, budget, [&](std::span<const uint32_t> c, uint64_t sup) {
    ++combinations;
    supports.try_emplace(sup, c.begin(), c.end());
  });
  return supports;
}

SubsetSupport evaluate(const SupportMap& supports, const ProblemInstance& inst,
                       SupportMode mode, std::span<const Index> w_star) {
  SubsetSupport out;
  out.w_star.assign(w_star.begin(), w_star.end());
  uint64_t mask = 0;
  for (Index i : w_star) mask |= uint64_t{1} << (i - 1);
  const uint32_t lo = inst.D(), hi = inst.M() + inst.D();
  const std::vector<uint32_t>* best = nullptr;
  uint64_t best_sup = 0;
  const std::vector<uint32_t>* witness = nullptr;
  uint64_t witness_sup = 0;
  for (const auto& [sup, comb] : supports) {
    if ((sup & mask) != mask) continue;
    uint32_t size = static_cast<uint32_t>(std::popcount(sup));
    if (out.best_size == 0 || size < out.best_size) {
      out.best_size = size;
      best = &comb;
      best_sup = sup;
    }
    bool ok = mode == SupportMode::kCSI ? size == hi : (size >= lo && size <= hi);
    if (ok && witness == nullptr) {
      witness = &comb;
      witness_sup = sup;
    }
  }
  out.pass = witness != nullptr;
  const std::vector<uint32_t>* chosen = witness != nullptr ? witness : best;
  uint64_t chosen_sup = witness != nullptr ? witness_sup : best_sup;
  if (chosen != nullptr) {
    out.witness = *chosen;
    for (uint32_t j = 0; j < 64; ++j)
      if (chosen_sup >> j & 1) out.witness_support.push_back(j + 1);
  }
  return out;
}

}  // namespace

std::string to_string(SupportMode mode) { return mode == SupportMode::kSI ? "SI" : "CSI"; }

SupportMode support_mode_for(const ProblemInstance& inst) {
  return inst.mode() == SideInfo::kCoded ? SupportMode::kCSI : SupportMode::kSI;
}

SupportReport support_requirement_check(const Query& query, const ProblemInstance& inst,
                                        SupportMode mode, uint64_t budget) {
  SupportReport r;
  r.mode = mode;
  SupportMap supports = collect_supports(query, inst, budget, r.combinations);
  r.pass = true;
  for_each_combination(inst.K(), inst.D(), [&](std::span<const uint32_t> c) {
    std::vector<Index> w;
    for (uint32_t x : c) w.push_back(x + 1);
    SubsetSupport s = evaluate(supports, inst, mode, w);
    r.pass = r.pass && s.pass;
    r.subsets.push_back(std::move(s));
  });
  return r;
}

SubsetSupport support_for_subset(const Query& query, const ProblemInstance& inst,
                                 SupportMode mode, std::span<const Index> w_star,
                                 uint64_t budget) {
  if (w_star.size() != inst.D()) throw Error("W* must have D indices");
  uint64_t combos = 0;
  SupportMap supports = collect_supports(query, inst, budget, combos);
  return evaluate(supports, inst, mode, w_star);
}

}  // namespace pcsi
