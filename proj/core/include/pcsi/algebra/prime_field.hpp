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

#ifndef PCSI_ALGEBRA_PRIME_FIELD_HPP_
#define PCSI_ALGEBRA_PRIME_FIELD_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>

namespace pcsi {

bool is_prime(uint64_t n);

// Arithmetic on raw residues modulo a prime q <= 2^31. Hot loops use this
// directly; FieldElement wraps it with modulus tracking.
class PrimeField {
 public:
  static constexpr uint64_t kMaxModulus = uint64_t{1} << 31;

  // Throws pcsi::Error unless q is a prime no larger than 2^31.
  explicit PrimeField(uint64_t q);

  uint32_t modulus() const { return q_; }

  // The field an element belongs to. No primality check: the element was
  // created from a validated field.
  static PrimeField of(const class FieldElement& e);

  uint32_t reduce(uint64_t v) const { return static_cast<uint32_t>(v % q_); }
  uint32_t add(uint32_t a, uint32_t b) const {
    uint64_t s = uint64_t{a} + b;
    return static_cast<uint32_t>(s >= q_ ? s - q_ : s);
  }
  uint32_t sub(uint32_t a, uint32_t b) const {
    return a >= b ? a - b : static_cast<uint32_t>(uint64_t{a} + q_ - b);
  }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : q_ - a; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>(uint64_t{a} * b % q_);
  }
  // Throws pcsi::Error for a == 0.
  uint32_t inv(uint32_t a) const;
  uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.q_ == b.q_;
  }

 private:
  struct Trusted {};
  PrimeField(uint32_t q, Trusted) : q_(q) {}

  uint32_t q_;
};

class FieldElement {
 public:
  FieldElement(uint64_t value, const PrimeField& field)
      : value_(field.reduce(value)), modulus_(field.modulus()) {}

  uint32_t value() const { return value_; }
  uint32_t modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement inv() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.value_ == b.value_ && a.modulus_ == b.modulus_;
  }

 private:
  FieldElement(uint32_t value, uint32_t modulus, int)
      : value_(value), modulus_(modulus) {}
  [[noreturn]] void throw_mismatch(const FieldElement& o) const;

  uint32_t value_;
  uint32_t modulus_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& e);

}  // namespace pcsi

#endif  // PCSI_ALGEBRA_PRIME_FIELD_HPP_
