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

#include "pcsi/algebra/matrix.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "pcsi/error.hpp"

namespace pcsi {

FqMatrix::FqMatrix(size_t rows, size_t cols, const PrimeField& field)
    : rows_(rows), cols_(cols), field_(field), a_(rows * cols, 0) {}

void FqMatrix::append_row(std::span<const uint32_t> r) {
  if (r.size() != cols_) throw Error("row length mismatch");
  for (uint32_t v : r) a_.push_back(field_.reduce(v));
  ++rows_;
}

FqMatrix FqMatrix::transpose() const {
  FqMatrix t(cols_, rows_, field_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t.ref(j, i) = at(i, j);
  return t;
}

std::vector<size_t> FqMatrix::reduce_rows() {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < cols_ && r < rows_; ++c) {
    size_t p = r;
    while (p < rows_ && at(p, c) == 0) ++p;
    if (p == rows_) continue;
    if (p != r) {
      for (size_t j = 0; j < cols_; ++j) std::swap(ref(p, j), ref(r, j));
    }
    uint32_t inv = field_.inv(at(r, c));
    for (size_t j = 0; j < cols_; ++j) ref(r, j) = field_.mul(at(r, j), inv);
    for (size_t i = 0; i < rows_; ++i) {
      if (i == r || at(i, c) == 0) continue;
      uint32_t f = at(i, c);
      for (size_t j = 0; j < cols_; ++j) {
        ref(i, j) = field_.sub(at(i, j), field_.mul(f, at(r, j)));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

size_t rank(const FqMatrix& m) {
  FqMatrix w = m;
  return w.reduce_rows().size();
}

bool in_row_span(const FqMatrix& m, std::span<const uint32_t> target) {
  if (target.size() != m.cols()) throw Error("target length mismatch");
  FqMatrix w = m;
  size_t base = rank(w);
  w.append_row(target);
  return rank(w) == base;
}

std::vector<std::vector<uint32_t>> left_null_space(const FqMatrix& t) {
  // c * t = 0  <=>  t^T * c^T = 0.
  FqMatrix a = t.transpose();
  std::vector<size_t> pivots = a.reduce_rows();
  const PrimeField& f = t.field();
  std::vector<bool> is_pivot(a.cols(), false);
  for (size_t p : pivots) is_pivot[p] = true;
  std::vector<std::vector<uint32_t>> basis;
  for (size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<uint32_t> v(a.cols(), 0);
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(a.at(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

void for_each_projective_combination(
    const FqMatrix& m, uint64_t budget,
    const std::function<void(std::span<const uint32_t>, uint64_t)>& fn) {
  const size_t n = m.rows();
  const size_t k = m.cols();
  if (k > 64) throw Error("support enumeration needs at most 64 columns");
  const uint64_t q = m.field().modulus();
  uint64_t count = 0;
  for (size_t i = 0; i < n; ++i) {
    // (q^n - 1)/(q - 1) = 1 + q + ... + q^(n-1).
    uint64_t term = 1;
    for (size_t e = 0; e < i; ++e) {
      if (term > budget / q + 1) throw BudgetExceeded("combination budget exceeded");
      term *= q;
    }
    count += term;
    if (count > budget) {
      throw BudgetExceeded("combination enumeration needs more than " +
                           std::to_string(budget) + " combinations");
    }
  }
  const PrimeField& f = m.field();
  std::vector<uint32_t> c(n, 0), acc(k, 0);
  for (size_t lead = 0; lead < n; ++lead) {
    // c = (0,..,0,1,c_{lead+1},..,c_{n-1}) over all tails.
    std::fill(c.begin(), c.end(), 0);
    c[lead] = 1;
    while (true) {
      std::fill(acc.begin(), acc.end(), 0);
      uint64_t support = 0;
      for (size_t i = lead; i < n; ++i) {
        if (c[i] == 0) continue;
        auto r = m.row(i);
        for (size_t j = 0; j < k; ++j) acc[j] = f.add(acc[j], f.mul(c[i], r[j]));
      }
      for (size_t j = 0; j < k; ++j)
        if (acc[j] != 0) support |= uint64_t{1} << j;
      fn(c, support);
      bool advanced = false;
      for (size_t pos = n; pos-- > lead + 1;) {
        if (++c[pos] < q) {
          advanced = true;
          break;
        }
        c[pos] = 0;
      }
      if (!advanced) break;
    }
  }
}

}  // namespace pcsi
