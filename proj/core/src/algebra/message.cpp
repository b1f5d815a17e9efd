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

#include "pcsi/algebra/message.hpp"

#include <string>
#include <utility>

#include "pcsi/error.hpp"

namespace pcsi {

Message::Message(std::vector<FieldElement> coords)
    : coords_(std::move(coords)), modulus_(0) {
  if (coords_.empty()) throw Error("message length must be at least 1");
  modulus_ = coords_.front().modulus();
  for (const auto& c : coords_) {
    if (c.modulus() != modulus_) throw Error("message mixes field moduli");
  }
}

Message Message::zero(size_t length, const PrimeField& field) {
  return Message(std::vector<FieldElement>(length, FieldElement(0, field)));
}

void Message::check_compatible(const Message& o) const {
  if (o.length() != length()) {
    throw Error("message length mismatch: " + std::to_string(length()) +
                " vs " + std::to_string(o.length()));
  }
  if (o.modulus_ != modulus_) throw Error("message field mismatch");
}

Message Message::operator+(const Message& o) const {
  Message r = *this;
  r += o;
  return r;
}

Message Message::operator-(const Message& o) const {
  check_compatible(o);
  Message r = *this;
  for (size_t i = 0; i < length(); ++i) r.coords_[i] -= o.coords_[i];
  return r;
}

Message& Message::operator+=(const Message& o) {
  check_compatible(o);
  for (size_t i = 0; i < length(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Message operator*(const FieldElement& c, const Message& x) {
  std::vector<FieldElement> out;
  out.reserve(x.length());
  for (const auto& v : x.coords()) out.push_back(c * v);
  return Message(std::move(out));
}

void msg_axpy(const FieldElement& c, const Message& x, Message& acc) {
  acc += c * x;
}

}  // namespace pcsi
