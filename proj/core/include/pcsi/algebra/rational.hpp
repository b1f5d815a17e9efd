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

#ifndef PCSI_ALGEBRA_RATIONAL_HPP_
#define PCSI_ALGEBRA_RATIONAL_HPP_

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <type_traits>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace pcsi {

// Exact rational in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  template <std::integral T>
  Rational(T n) {  // NOLINT(runtime/explicit)
    if constexpr (std::is_signed_v<T>) {
      v_ = static_cast<long>(n);
    } else {
      v_ = static_cast<unsigned long>(n);
    }
  }
  // Throws pcsi::Error when d == 0.
  Rational(long n, long d);
  explicit Rational(const mpz_class& n) : v_(n) {}
  explicit Rational(const mpq_class& v);

  // Parses "n/d" or "n".
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  Rational abs() const;
  double to_double() const { return v_.get_d(); }

  // Always "n/d", e.g. "1/1".
  std::string to_string() const;
  // "n" for integers, "n/d" otherwise.
  std::string to_display() const;

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  // Throws pcsi::Error on division by zero.
  Rational operator/(const Rational& o) const;
  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace pcsi

#endif  // PCSI_ALGEBRA_RATIONAL_HPP_
