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

#include "pcsi/algebra/rational.hpp"

#include <ostream>

#include "pcsi/error.hpp"

namespace pcsi {

Rational::Rational(long n, long d) {
  if (d == 0) throw Error("rational with zero denominator");
  v_ = mpq_class(mpz_class(n), mpz_class(d));
  v_.canonicalize();
}

Rational::Rational(const mpq_class& v) : v_(v) {
  if (sgn(v_.get_den()) == 0) throw Error("rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(s));
    mpz_class n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (sgn(d) == 0) throw Error("rational with zero denominator");
    return Rational(mpq_class(n, d));
  } catch (const std::invalid_argument&) {
    throw Error("malformed rational '" + s + "'");
  }
}

Rational Rational::abs() const {
  Rational r;
  r.v_ = ::abs(v_);
  return r;
}

std::string Rational::to_string() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::to_display() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return to_string();
}

Rational Rational::operator+(const Rational& o) const {
  Rational r;
  r.v_ = v_ + o.v_;
  return r;
}

Rational Rational::operator-(const Rational& o) const {
  Rational r;
  r.v_ = v_ - o.v_;
  return r;
}

Rational Rational::operator*(const Rational& o) const {
  Rational r;
  r.v_ = v_ * o.v_;
  return r;
}

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) throw Error("division by zero");
  Rational r;
  r.v_ = v_ / o.v_;
  return r;
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

}  // namespace pcsi
