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

#include "pcsi/algebra/prime_field.hpp"

#include <ostream>

#include "pcsi/error.hpp"

namespace pcsi {

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(uint64_t q) : q_(0) {
  if (q > kMaxModulus || !is_prime(q)) {
    throw Error("modulus " + std::to_string(q) + " is not a prime <= 2^31");
  }
  q_ = static_cast<uint32_t>(q);
}

PrimeField PrimeField::of(const FieldElement& e) {
  return PrimeField(e.modulus(), Trusted{});
}

uint32_t PrimeField::inv(uint32_t a) const {
  a = reduce(a);
  if (a == 0) throw Error("zero has no inverse");
  // Extended Euclid on (q, a).
  int64_t r0 = q_, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    int64_t quot = r0 / r1;
    int64_t r2 = r0 - quot * r1;
    r0 = r1;
    r1 = r2;
    int64_t s2 = s0 - quot * s1;
    s0 = s1;
    s1 = s2;
  }
  int64_t res = s0 % static_cast<int64_t>(q_);
  if (res < 0) res += q_;
  return static_cast<uint32_t>(res);
}

void FieldElement::throw_mismatch(const FieldElement& o) const {
  throw Error("field elements from different moduli: " +
              std::to_string(modulus_) + " vs " + std::to_string(o.modulus_));
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  if (modulus_ != o.modulus_) throw_mismatch(o);
  uint64_t s = uint64_t{value_} + o.value_;
  return FieldElement(static_cast<uint32_t>(s >= modulus_ ? s - modulus_ : s),
                      modulus_, 0);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  if (modulus_ != o.modulus_) throw_mismatch(o);
  uint32_t v = value_ >= o.value_
                   ? value_ - o.value_
                   : static_cast<uint32_t>(uint64_t{value_} + modulus_ - o.value_);
  return FieldElement(v, modulus_, 0);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  if (modulus_ != o.modulus_) throw_mismatch(o);
  return FieldElement(
      static_cast<uint32_t>(uint64_t{value_} * o.value_ % modulus_), modulus_, 0);
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  return *this * o.inv();
}

FieldElement FieldElement::operator-() const {
  return FieldElement(value_ == 0 ? 0 : modulus_ - value_, modulus_, 0);
}

FieldElement FieldElement::inv() const {
  if (value_ == 0) throw Error("zero has no inverse");
  // The modulus was validated when the element was created.
  int64_t r0 = modulus_, r1 = value_, s0 = 0, s1 = 1;
  while (r1 != 0) {
    int64_t quot = r0 / r1;
    int64_t r2 = r0 - quot * r1;
    r0 = r1;
    r1 = r2;
    int64_t s2 = s0 - quot * s1;
    s0 = s1;
    s1 = s2;
  }
  int64_t res = s0 % static_cast<int64_t>(modulus_);
  if (res < 0) res += modulus_;
  return FieldElement(static_cast<uint32_t>(res), modulus_, 0);
}

std::ostream& operator<<(std::ostream& os, const FieldElement& e) {
  return os << e.value();
}

}  // namespace pcsi
