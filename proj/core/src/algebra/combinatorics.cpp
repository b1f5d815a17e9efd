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

#include "pcsi/algebra/combinatorics.hpp"

#include <string>

#include "pcsi/error.hpp"

namespace pcsi {

uint64_t binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) {
      throw Error("binomial(" + std::to_string(n) + "," + std::to_string(k) +
                  ") overflows 64 bits");
    }
  }
  return static_cast<uint64_t>(r);
}

mpz_class binomial_big(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class factorial_big(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

std::vector<uint32_t> unrank_combination(uint32_t n, uint32_t k, uint64_t rank) {
  if (rank >= binomial(n, k)) throw Error("combination rank out of range");
  std::vector<uint32_t> out;
  out.reserve(k);
  uint32_t next = 0;
  for (uint32_t slot = 0; slot < k; ++slot) {
    while (true) {
      uint64_t with = binomial(n - next - 1, k - slot - 1);
      if (rank < with) break;
      rank -= with;
      ++next;
    }
    out.push_back(next++);
  }
  return out;
}

uint64_t rank_combination(uint32_t n, std::span<const uint32_t> subset) {
  uint64_t rank = 0;
  uint32_t k = static_cast<uint32_t>(subset.size());
  uint32_t next = 0;
  for (uint32_t slot = 0; slot < k; ++slot) {
    for (uint32_t v = next; v < subset[slot]; ++v) {
      rank += binomial(n - v - 1, k - slot - 1);
    }
    next = subset[slot] + 1;
  }
  return rank;
}

void for_each_combination(uint32_t n, uint32_t k,
                          const std::function<void(std::span<const uint32_t>)>& fn) {
  if (k > n) return;
  std::vector<uint32_t> c(k);
  for (uint32_t i = 0; i < k; ++i) c[i] = i;
  while (true) {
    fn(c);
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (uint32_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace pcsi
