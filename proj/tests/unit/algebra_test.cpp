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

#include <gtest/gtest.h>

#include <random>

#include "pcsi/algebra/combinatorics.hpp"
#include "pcsi/algebra/matrix.hpp"
#include "pcsi/algebra/message.hpp"
#include "pcsi/algebra/prime_field.hpp"
#include "pcsi/algebra/rational.hpp"
#include "pcsi/error.hpp"
#include "support/oracles.hpp"

namespace pcsi {
namespace {

bool trial_division_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

TEST(PrimeFieldTest, IsPrimeMatchesTrialDivision) {
  for (uint64_t n = 0; n < 5000; ++n) EXPECT_EQ(is_prime(n), trial_division_prime(n)) << n;
  EXPECT_TRUE(is_prime(2147483647));
  EXPECT_FALSE(is_prime(2147483649ULL));
}

TEST(PrimeFieldTest, RejectsBadModuli) {
  EXPECT_THROW(PrimeField(1), Error);
  EXPECT_THROW(PrimeField(9), Error);
  EXPECT_THROW(PrimeField((uint64_t{1} << 31) + 11), Error);
  EXPECT_NO_THROW(PrimeField(2147483647));
}

TEST(PrimeFieldTest, SmallValues) {
  PrimeField f(7);
  EXPECT_EQ(f.mul(3, 5), 1u);
  EXPECT_EQ(f.inv(5), 3u);
  // c_2 = -omega_{1,1} / omega_{2,1} with omega_{1,1} = 1, omega_{2,1} = 4.
  EXPECT_EQ(f.mul(f.neg(1), f.inv(4)), 5u);
}

TEST(PrimeFieldTest, InverseMatchesExhaustiveScan) {
  for (uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u, 101u}) {
    PrimeField f(q);
    for (uint32_t a = 1; a < q; ++a) EXPECT_EQ(f.inv(a), testing::naive_inverse(a, q));
  }
}

TEST(PrimeFieldTest, ZeroHasNoInverse) {
  PrimeField f(7);
  EXPECT_THROW(f.inv(0), Error);
  try {
    FieldElement(0, f).inv();
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "zero has no inverse");
  }
}

TEST(PrimeFieldTest, MismatchedModuliThrow) {
  FieldElement a(1, PrimeField(5)), b(1, PrimeField(7));
  EXPECT_THROW(a + b, Error);
  EXPECT_THROW(a * b, Error);
}

TEST(PrimeFieldTest, FieldAxiomsOnRandomTriples) {
  std::mt19937_64 gen(11);
  for (uint64_t q : {3ULL, 7ULL, 65521ULL, 2147483647ULL}) {
    PrimeField f(q);
    std::uniform_int_distribution<uint64_t> d(0, q - 1);
    for (int k = 0; k < 2000; ++k) {
      FieldElement a(d(gen), f), b(d(gen), f), c(d(gen), f);
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a - b + b, a);
      EXPECT_TRUE((a + -a).is_zero());
      if (!b.is_zero()) EXPECT_EQ(a / b * b, a);
      EXPECT_EQ((a * b).value(),
                static_cast<uint32_t>(static_cast<unsigned __int128>(a.value()) * b.value() % q));
    }
  }
}

TEST(MessageTest, AxpyIdentityAndCoordinatewise) {
  PrimeField f(3);
  Message x({FieldElement(1, f), FieldElement(2, f)});
  Message acc = Message::zero(2, f);
  msg_axpy(FieldElement(2, f), x, acc);
  EXPECT_EQ(acc, Message({FieldElement(2, f), FieldElement(1, f)}));

  Message id = Message::zero(2, f);
  msg_axpy(FieldElement(1, f), x, id);
  EXPECT_EQ(id, x);
}

TEST(MessageTest, RandomAxpyMatchesOracle) {
  std::mt19937_64 gen(5);
  PrimeField f(13);
  std::uniform_int_distribution<uint32_t> d(0, 12);
  for (int k = 0; k < 200; ++k) {
    std::vector<FieldElement> xs, as;
    std::vector<uint32_t> expect;
    uint32_t c = d(gen);
    for (int e = 0; e < 5; ++e) {
      uint32_t x = d(gen), a = d(gen);
      xs.emplace_back(x, f);
      as.emplace_back(a, f);
      expect.push_back((a + c * x) % 13);
    }
    Message acc(as);
    msg_axpy(FieldElement(c, f), Message(xs), acc);
    for (int e = 0; e < 5; ++e) EXPECT_EQ(acc[e].value(), expect[e]);
  }
}

TEST(MessageTest, LengthMismatchThrows) {
  PrimeField f(3);
  Message a = Message::zero(2, f), b = Message::zero(3, f);
  EXPECT_THROW(a + b, Error);
  EXPECT_THROW(msg_axpy(FieldElement(1, f), b, a), Error);
}

TEST(RationalTest, Arithmetic) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(2, 4).to_string(), "1/2");
  EXPECT_EQ(Rational(7, 11) * Rational(2, 7), Rational(2, 11));
  EXPECT_EQ(Rational(3).to_string(), "3/1");
  EXPECT_EQ(Rational(3).to_display(), "3");
  EXPECT_EQ(Rational(-6, 4).to_string(), "-3/2");
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_THROW(Rational(1, 0), Error);
  EXPECT_THROW(Rational(1) / Rational(0), Error);
  EXPECT_THROW(Rational::parse("1/"), Error);
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
}

TEST(CombinatoricsTest, BinomialMatchesPascal) {
  std::vector<std::vector<uint64_t>> c(61, std::vector<uint64_t>(61, 0));
  for (int n = 0; n <= 60; ++n) {
    c[n][0] = 1;
    for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0);
  }
  for (int n = 0; n <= 60; ++n)
    for (int k = 0; k <= n; ++k) {
      EXPECT_EQ(binomial(n, k), c[n][k]);
      EXPECT_EQ(binomial_big(n, k), mpz_class(std::to_string(c[n][k])));
    }
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_THROW(binomial(200, 100), Error);
  EXPECT_EQ(factorial_big(12), mpz_class(479001600));
}

TEST(CombinatoricsTest, RankUnrankRoundTrip) {
  for (uint32_t n = 0; n <= 9; ++n)
    for (uint32_t k = 0; k <= n; ++k) {
      uint64_t expected = 0;
      for_each_combination(n, k, [&](std::span<const uint32_t> s) {
        EXPECT_EQ(rank_combination(n, s), expected);
        auto u = unrank_combination(n, k, expected);
        EXPECT_TRUE(std::equal(u.begin(), u.end(), s.begin(), s.end()));
        ++expected;
      });
      EXPECT_EQ(expected, binomial(n, k));
    }
}

FqMatrix random_matrix(size_t r, size_t c, const PrimeField& f, std::mt19937_64& gen) {
  FqMatrix m(r, c, f);
  std::uniform_int_distribution<uint32_t> d(0, f.modulus() - 1);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m.set(i, j, d(gen) % 2 ? d(gen) : 0);
  return m;
}

std::vector<std::vector<uint32_t>> rows_of(const FqMatrix& m) {
  std::vector<std::vector<uint32_t>> rows;
  for (size_t i = 0; i < m.rows(); ++i) rows.emplace_back(m.row(i).begin(), m.row(i).end());
  return rows;
}

TEST(MatrixTest, RankMatchesSpanEnumeration) {
  std::mt19937_64 gen(3);
  for (uint32_t q : {2u, 3u, 5u}) {
    PrimeField f(q);
    for (int k = 0; k < 60; ++k) {
      FqMatrix m = random_matrix(1 + gen() % 4, 1 + gen() % 5, f, gen);
      EXPECT_EQ(rank(m), testing::span_rank(rows_of(m), q));
    }
  }
}

TEST(MatrixTest, RowSpanMembershipMatchesRankIncrease) {
  std::mt19937_64 gen(4);
  PrimeField f(3);
  for (int k = 0; k < 100; ++k) {
    FqMatrix m = random_matrix(3, 4, f, gen);
    std::vector<uint32_t> t(4);
    for (auto& x : t) x = gen() % 3;
    auto rows = rows_of(m);
    size_t before = testing::span_rank(rows, 3);
    rows.push_back(t);
    EXPECT_EQ(in_row_span(m, t), testing::span_rank(rows, 3) == before);
  }
}

TEST(MatrixTest, LeftNullSpaceAnnihilates) {
  std::mt19937_64 gen(9);
  PrimeField f(7);
  for (int k = 0; k < 50; ++k) {
    FqMatrix t = random_matrix(4, 2, f, gen);
    auto basis = left_null_space(t);
    EXPECT_EQ(basis.size(), t.rows() - rank(t));
    for (const auto& c : basis) {
      for (size_t j = 0; j < t.cols(); ++j) {
        uint64_t s = 0;
        for (size_t i = 0; i < t.rows(); ++i) s += uint64_t{c[i]} * t.at(i, j);
        EXPECT_EQ(s % 7, 0u);
      }
    }
  }
}

TEST(MatrixTest, ProjectiveCombinationsCountAndSupport) {
  PrimeField f(5);
  std::mt19937_64 gen(2);
  FqMatrix m = random_matrix(3, 6, f, gen);
  uint64_t count = 0;
  for_each_projective_combination(m, 1000, [&](std::span<const uint32_t> c, uint64_t mask) {
    ++count;
    size_t lead = 0;
    while (c[lead] == 0) ++lead;
    EXPECT_EQ(c[lead], 1u);
    for (size_t j = 0; j < 6; ++j) {
      uint64_t s = 0;
      for (size_t i = 0; i < 3; ++i) s += uint64_t{c[i]} * m.at(i, j);
      EXPECT_EQ((s % 5) != 0, ((mask >> j) & 1) != 0);
    }
  });
  EXPECT_EQ(count, (125u - 1) / 4);
  EXPECT_THROW(for_each_projective_combination(m, 10, [](auto, auto) {}), BudgetExceeded);
}

}  // namespace
}  // namespace pcsi
