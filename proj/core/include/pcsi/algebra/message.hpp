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

#ifndef PCSI_ALGEBRA_MESSAGE_HPP_
#define PCSI_ALGEBRA_MESSAGE_HPP_

#include <cstddef>
#include <vector>

#include "pcsi/algebra/prime_field.hpp"

namespace pcsi {

// A length-l vector over F_q. Only addition and scalar multiplication are
// supported; messages are never multiplied with each other.
class Message {
 public:
  Message(std::vector<FieldElement> coords);
  static Message zero(size_t length, const PrimeField& field);

  size_t length() const { return coords_.size(); }
  uint32_t modulus() const { return modulus_; }
  const std::vector<FieldElement>& coords() const { return coords_; }
  const FieldElement& operator[](size_t i) const { return coords_[i]; }

  Message operator+(const Message& o) const;
  Message operator-(const Message& o) const;
  Message& operator+=(const Message& o);

  friend bool operator==(const Message& a, const Message& b) {
    return a.modulus_ == b.modulus_ && a.coords_ == b.coords_;
  }

 private:
  void check_compatible(const Message& o) const;

  std::vector<FieldElement> coords_;
  uint32_t modulus_;
};

Message operator*(const FieldElement& c, const Message& x);

// acc += c * x.
void msg_axpy(const FieldElement& c, const Message& x, Message& acc);

}  // namespace pcsi

#endif  // PCSI_ALGEBRA_MESSAGE_HPP_
