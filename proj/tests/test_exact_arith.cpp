#include "intdist/exact_arith.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace intdist;

namespace {

// Independent continued fraction of sqrt(d): expand with exact floor(sqrt) on rationals.
ContinuedFraction naive_cf(long long d) {
  ContinuedFraction cf;
  long long a0 = 0;
  while ((a0 + 1) * (a0 + 1) <= d) ++a0;
  cf.a0 = a0;
  // x = (sqrt(d) + p) / q, starting from x_1 = 1 / (sqrt(d) - a0).
  long long p = a0;
  long long q = d - a0 * a0;
  while (true) {
    long long a = 0;
    while ((a + 1) * q <= a0 + p) ++a;
    cf.period.push_back(a);
    if (a == 2 * a0) break;
    p = a * q - p;
    q = (d - p * p) / q;
  }
  return cf;
}

}  // namespace

TEST(ExactArith, IsqrtExamples) {
  EXPECT_EQ(isqrt(Integer(0)), 0);
  EXPECT_EQ(isqrt(Integer(25)), 5);
  EXPECT_EQ(isqrt(Integer(24)), 4);
  EXPECT_THROW(isqrt(Integer(-1)), DomainError);
}

TEST(ExactArith, IsqrtBracketsLargeValues) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Integer n = rng();
    for (int j = 0; j < i % 9; ++j) n = n * Integer(rng()) + rng();
    const Integer r = isqrt(n);
    EXPECT_LE(r * r, n);
    EXPECT_GT((r + 1) * (r + 1), n);
  }
}

TEST(ExactArith, IsqrtMatchesFloatingForSmall) {
  for (std::uint64_t n = 0; n < 200000; n += 7) {
    auto r = static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<double>(n))));
    EXPECT_EQ(isqrt(n), r);
    EXPECT_EQ(isqrt(Integer(n)), r);
  }
}

TEST(ExactArith, PerfectSquareExamples) {
  EXPECT_TRUE(is_perfect_square(Integer(16)));
  EXPECT_FALSE(is_perfect_square(Integer(20)));
  EXPECT_FALSE(is_perfect_square(Integer(-4)));
  EXPECT_TRUE(is_perfect_square(Integer(0)));
  EXPECT_TRUE(is_perfect_square(std::int64_t{16}));
  EXPECT_FALSE(is_perfect_square(std::int64_t{-4}));
}

TEST(ExactArith, PerfectSquareAgreesWithEnumeration) {
  std::vector<bool> square(5000, false);
  for (int r = 0; r * r < 5000; ++r) square[r * r] = true;
  for (int n = 0; n < 5000; ++n) {
    EXPECT_EQ(is_perfect_square(Integer(n)), square[n]) << n;
    EXPECT_EQ(is_perfect_square(std::int64_t{n}), square[n]) << n;
  }
  const Integer big = Integer("123456789012345678901234567890");
  EXPECT_TRUE(is_perfect_square(big * big));
  EXPECT_FALSE(is_perfect_square(big * big + 1));
  EXPECT_FALSE(is_perfect_square(big * big - 1));
}

TEST(ExactArith, ContinuedFractionExamples) {
  auto cf2 = cf_sqrt(2);
  EXPECT_EQ(cf2.a0, 1);
  EXPECT_EQ(cf2.period, std::vector<Integer>{2});
  auto cf5 = cf_sqrt(5);
  EXPECT_EQ(cf5.a0, 2);
  EXPECT_EQ(cf5.period, std::vector<Integer>{4});
  auto cf3 = cf_sqrt(3);
  EXPECT_EQ(cf3.a0, 1);
  EXPECT_EQ(cf3.period, (std::vector<Integer>{1, 2}));
  EXPECT_THROW(cf_sqrt(16), DomainError);
  EXPECT_THROW(cf_sqrt(1), DomainError);
}

TEST(ExactArith, ContinuedFractionMatchesNaiveExpansion) {
  for (long long d = 2; d <= 1000; ++d) {
    if (is_perfect_square(std::int64_t{d})) continue;
    const auto got = cf_sqrt(d);
    const auto want = naive_cf(d);
    EXPECT_EQ(got.a0, want.a0) << d;
    EXPECT_EQ(got.period, want.period) << d;
  }
}

TEST(ExactArith, FactorizeRebuildsInput) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const Integer n = Integer(rng() % 1000000000ULL) + 1;
    Integer prod = 1;
    for (const auto& [p, e] : factorize(n)) {
      EXPECT_EQ(positive_divisors(p).size(), 2u) << p;
      for (unsigned j = 0; j < e; ++j) prod *= p;
    }
    EXPECT_EQ(prod, n);
  }
  EXPECT_EQ(positive_divisors(12), (std::vector<Integer>{1, 2, 3, 4, 6, 12}));
}

TEST(ExactArith, ExtendedGcdBezout) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Integer a = Integer(static_cast<long long>(rng() % 2001)) - 1000;
    const Integer b = Integer(static_cast<long long>(rng() % 2001)) - 1000;
    Integer s, t;
    const Integer g = extended_gcd(a, b, s, t);
    EXPECT_EQ(a * s + b * t, g);
    EXPECT_EQ(g, gcd(a, b));
  }
}

TEST(ExactArith, FloorDivisionAndSignOfQuadratic) {
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(floor_div(7, -2), -4);
  EXPECT_EQ(mod_floor(-7, 3), 2);
  for (int p = -30; p <= 30; ++p) {
    for (int q = -30; q <= 30; ++q) {
      const double v = p + q * std::sqrt(7.0);
      EXPECT_EQ(sign_of_quadratic(p, q, 7), (v > 0) - (v < 0)) << p << " " << q;
    }
  }
}

TEST(ExactArith, PointOrderingIsLexicographic) {
  EXPECT_LT((LatticePoint{-1, 5}), (LatticePoint{0, -5}));
  EXPECT_LT((LatticePoint{0, -5}), (LatticePoint{0, 2}));
  EXPECT_EQ(to_string(LatticePoint{-3, 4}), "(-3,4)");
}
