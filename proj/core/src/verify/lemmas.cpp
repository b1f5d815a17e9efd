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

#include "pcsi/verify/lemmas.hpp"

#include <algorithm>
#include <bit>

#include "pcsi/algebra/combinatorics.hpp"
#include "pcsi/error.hpp"
#include "pcsi/verify/decodability.hpp"

namespace pcsi {
namespace {

struct Support {
  uint64_t mask;
  std::vector<uint32_t> combination;
};

// One combination per distinct support, smallest supports first.
std::vector<Support> support_family(const FqMatrix& a, uint64_t budget) {
  std::map<uint64_t, std::vector<uint32_t>> seen;
  for_each_projective_combination(a, budget, [&](std::span<const uint32_t> c, uint64_t mask) {
    if (mask != 0) seen.try_emplace(mask, c.begin(), c.end());
  });
  std::vector<Support> family;
  for (auto& [mask, c] : seen) family.push_back({mask, std::move(c)});
  std::stable_sort(family.begin(), family.end(), [](const Support& x, const Support& y) {
    return std::popcount(x.mask) < std::popcount(y.mask);
  });
  return family;
}

bool size_ok(uint32_t size, const ProblemInstance& inst, SupportMode mode) {
  if (mode == SupportMode::kCSI) return size == inst.M() + inst.D();
  return size >= inst.D() && size <= inst.M() + inst.D();
}

std::vector<Index> indices_of(uint64_t mask) {
  std::vector<Index> v;
  for (uint32_t j = 0; j < 64; ++j)
    if (mask >> j & 1) v.push_back(j + 1);
  return v;
}

// Builds and confirms a witness for a label from a support containing it.
LemmaWitness witness_from(const Query& query, const FqMatrix& a, const ProblemInstance& inst,
                          SupportMode mode, const std::vector<Index>& label, const Support& sup) {
  const PrimeField& f = inst.field();
  const uint32_t K = inst.K();
  std::vector<uint32_t> form(K, 0);
  for (size_t r = 0; r < a.rows(); ++r)
    for (uint32_t j = 0; j < K; ++j)
      form[j] = f.add(form[j], f.mul(sup.combination[r], a.at(r, j)));

  LemmaWitness w;
  w.label = label;
  w.combination = sup.combination;
  uint64_t wmask = 0;
  for (Index i : label) wmask |= uint64_t{1} << (i - 1);
  for (Index j : indices_of(sup.mask & ~wmask)) {
    if (std::popcount(wmask) >= static_cast<int>(inst.D())) break;
    wmask |= uint64_t{1} << (j - 1);
  }
  w.W = indices_of(wmask);
  for (Index i : w.W) w.V.push_back(form[i - 1]);
  uint64_t smask = sup.mask & ~wmask;
  w.S = indices_of(smask);
  if (mode == SupportMode::kCSI) {
    for (Index j : w.S) w.U.push_back(form[j - 1]);
  } else {
    for (Index j = 1; j <= K && w.S.size() < inst.M(); ++j) {
      uint64_t bit = uint64_t{1} << (j - 1);
      if ((wmask | smask) & bit) continue;
      smask |= bit;
      w.S = indices_of(smask);
    }
  }
  LinearSystem sys = mode == SupportMode::kCSI ? system_with_coded_row(query, inst, w.S, w.U)
                                               : system_with_side_rows(query, inst, w.S);
  w.pass = decodable(sys, demand_form(K, w.W, w.V));
  if (!w.pass) throw Error("internal: support witness not decodable");
  return w;
}

LemmaReport lemma_condition(const Query& query, const ProblemInstance& inst, SupportMode mode,
                            PrivacyKind kind, uint64_t budget) {
  validate_query(query, inst);
  FqMatrix a = query_matrix(query, inst.K(), inst.field());
  auto family = support_family(a, budget);
  LemmaReport report;
  report.mode = mode;
  report.pass = true;
  auto visit = [&](const std::vector<Index>& label) {
    uint64_t lmask = 0;
    for (Index i : label) lmask |= uint64_t{1} << (i - 1);
    LemmaWitness w;
    w.label = label;
    for (const Support& s : family) {
      if ((s.mask & lmask) != lmask || !size_ok(std::popcount(s.mask), inst, mode)) continue;
      w = witness_from(query, a, inst, mode, label, s);
      break;
    }
    report.pass = report.pass && w.pass;
    report.labels.push_back(std::move(w));
  };
  if (kind == PrivacyKind::kIndividual) {
    for (Index i = 1; i <= inst.K(); ++i) visit({i});
  } else {
    for_each_combination(inst.K(), inst.D(), [&](std::span<const uint32_t> c) {
      std::vector<Index> w;
      for (uint32_t x : c) w.push_back(x + 1);
      visit(w);
    });
  }
  return report;
}

}  // namespace

LemmaReport lemma1_condition(const Query& query, const ProblemInstance& inst, SupportMode mode,
                             uint64_t budget) {
  return lemma_condition(query, inst, mode, PrivacyKind::kIndividual, budget);
}

LemmaReport lemma2_condition(const Query& query, const ProblemInstance& inst, SupportMode mode,
                             uint64_t budget) {
  return lemma_condition(query, inst, mode, PrivacyKind::kJoint, budget);
}

LemmaSweep::LemmaSweep(const ProblemInstance& inst, PrivacyKind kind, SupportMode mode)
    : inst_(inst), kind_(kind), mode_(mode) {}

bool LemmaSweep::check(const std::vector<std::vector<Index>>& parts,
                       std::span<const uint32_t> coeffs) {
  Query q;
  size_t p = 0;
  for (const auto& part : parts) {
    QueryPart qp;
    qp.indices = part;
    for (size_t k = 0; k < part.size(); ++k) qp.coeffs.emplace_back(coeffs[p++], inst_.field());
    q.parts.push_back(std::move(qp));
  }
  return check(q);
}

bool LemmaSweep::check(const Query& query) {
  ++queries_;
  FqMatrix a = query_matrix(query, inst_.K(), inst_.field());
  std::vector<uint64_t> key;
  for_each_projective_combination(a, 10000000, [&](std::span<const uint32_t>, uint64_t mask) {
    key.push_back(mask);
  });
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    bool pass = lemma_condition(query, inst_, mode_, kind_, 10000000).pass;
    it = cache_.emplace(std::move(key), pass).first;
  }
  if (!it->second) {
    ++failures_;
    if (!first_failure_) first_failure_ = query;
  }
  return it->second;
}

}  // namespace pcsi
