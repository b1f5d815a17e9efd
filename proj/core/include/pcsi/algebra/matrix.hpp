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

#ifndef PCSI_ALGEBRA_MATRIX_HPP_
#define PCSI_ALGEBRA_MATRIX_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pcsi/algebra/prime_field.hpp"

namespace pcsi {

// Dense row-major matrix of residues over F_q.
class FqMatrix {
 public:
  FqMatrix(size_t rows, size_t cols, const PrimeField& field);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const PrimeField& field() const { return field_; }

  uint32_t at(size_t i, size_t j) const { return a_[i * cols_ + j]; }
  void set(size_t i, size_t j, uint64_t v) { a_[i * cols_ + j] = field_.reduce(v); }
  std::span<const uint32_t> row(size_t i) const {
    return {a_.data() + i * cols_, cols_};
  }
  void append_row(std::span<const uint32_t> r);

  FqMatrix transpose() const;

  // In-place reduced row echelon form. Returns the pivot columns.
  std::vector<size_t> reduce_rows();

 private:
  uint32_t& ref(size_t i, size_t j) { return a_[i * cols_ + j]; }

  size_t rows_;
  size_t cols_;
  PrimeField field_;
  std::vector<uint32_t> a_;
};

size_t rank(const FqMatrix& m);

// True when target lies in the row space of m.
bool in_row_span(const FqMatrix& m, std::span<const uint32_t> target);

// Basis of {c : c * t = 0}, each vector of length t.rows().
std::vector<std::vector<uint32_t>> left_null_space(const FqMatrix& t);

// Calls fn(c, support) for every non-zero c in F_q^rows whose first non-zero
// entry is 1, where support is the bitmask of columns of c * m that are
// non-zero (bit j-1 for column j). Requires cols <= 64. Throws
// BudgetExceeded when (q^rows - 1)/(q - 1) exceeds budget.
void for_each_projective_combination(
    const FqMatrix& m, uint64_t budget,
    const std::function<void(std::span<const uint32_t>, uint64_t)>& fn);

}  // namespace pcsi

#endif  // PCSI_ALGEBRA_MATRIX_HPP_
