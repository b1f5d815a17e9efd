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

#ifndef PCSI_ALGEBRA_COMBINATORICS_HPP_
#define PCSI_ALGEBRA_COMBINATORICS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace pcsi {

// Throws pcsi::Error when the result does not fit in 64 bits.
uint64_t binomial(uint64_t n, uint64_t k);
mpz_class binomial_big(unsigned long n, unsigned long k);
mpz_class factorial_big(unsigned long n);

// The rank-th k-subset of {0..n-1} in lexicographic order.
std::vector<uint32_t> unrank_combination(uint32_t n, uint32_t k, uint64_t rank);
// Lexicographic rank of a sorted k-subset of {0..n-1}.
uint64_t rank_combination(uint32_t n, std::span<const uint32_t> subset);

// Visits every k-subset of {0..n-1} in lexicographic order.
void for_each_combination(uint32_t n, uint32_t k,
                          const std::function<void(std::span<const uint32_t>)>& fn);

}  // namespace pcsi

#endif  // PCSI_ALGEBRA_COMBINATORICS_HPP_
