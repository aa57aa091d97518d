#include "intdist/pell.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace intdist;

namespace {

// Smallest u > 0 with d u^2 + 1 a square.
PellSolution exhaustive_fundamental(long long d) {
  for (long long u = 1;; ++u) {
    const Integer n = Integer(d) * u * u + 1;
    if (is_perfect_square(n)) return {isqrt(n), u, d, 1};
  }
}

bool naive_odd_period(long long d) {
  long long a0 = 0;
  while ((a0 + 1) * (a0 + 1) <= d) ++a0;
  long long p = a0;
  long long q = d - a0 * a0;
  std::size_t len = 0;
  while (true) {
    long long a = 0;
    while ((a + 1) * q <= a0 + p) ++a;
    ++len;
    if (a == 2 * a0) break;
    p = a * q - p;
    q = (d - p * p) / q;
  }
  return len % 2 == 1;
}

bool non_square(long long d) { return !is_perfect_square(std::int64_t{d}); }

}  // namespace

TEST(Pell, FundamentalExamples) {
  EXPECT_EQ(fundamental_pell(2), (PellSolution{3, 2, 2, 1}));
  EXPECT_EQ(fundamental_pell(5), (PellSolution{9, 4, 5, 1}));
  const PellSolution s61 = fundamental_pell(61);
  EXPECT_EQ(s61.t, Integer("1766319049"));
  EXPECT_EQ(s61.u, Integer("226153980"));
  EXPECT_EQ(s61.t * s61.t - 61 * s61.u * s61.u, 1);
  EXPECT_THROW(fundamental_pell(9), DomainError);
}

TEST(Pell, FundamentalMatchesExhaustiveSearch) {
  for (long long d = 2; d <= 60; ++d) {
    if (!non_square(d)) continue;
    EXPECT_EQ(fundamental_pell(d), exhaustive_fundamental(d)) << d;
  }
}

TEST(Pell, FundamentalSatisfiesForLargeD) {
  for (long long d = 2; d <= 3000; d += 37) {
    if (!non_square(d)) continue;
    EXPECT_TRUE(fundamental_pell(d).satisfies()) << d;
  }
}

TEST(Pell, NegativeExamples) {
  EXPECT_EQ(negative_pell(2), (PellSolution{1, 1, 2, -1}));
  EXPECT_EQ(negative_pell(5), (PellSolution{2, 1, 5, -1}));
  EXPECT_FALSE(negative_pell(3).has_value());
}

TEST(Pell, NegativeExistenceMatchesOddPeriod) {
  for (long long d = 2; d <= 200; ++d) {
    if (!non_square(d)) continue;
    const auto s = negative_pell(d);
    EXPECT_EQ(s.has_value(), naive_odd_period(d)) << d;
    if (s) {
      EXPECT_TRUE(s->satisfies()) << d;
      EXPECT_EQ(compose(*s, PellSolution{s->t, s->u, d, 1}).n, -1);
    }
  }
}

TEST(Pell, NegativeIsMinimalForSmallD) {
  for (long long d = 2; d <= 60; ++d) {
    if (!non_square(d)) continue;
    std::optional<long long> first;
    for (long long u = 1; u <= 20000 && !first; ++u) {
      if (is_perfect_square(Integer(d) * u * u - 1)) first = u;
    }
    const auto s = negative_pell(d);
    if (first) {
      ASSERT_TRUE(s.has_value()) << d;
      EXPECT_EQ(s->u, *first) << d;
    } else {
      EXPECT_FALSE(s.has_value()) << d;
    }
  }
}

TEST(Pell, ComposeExamples) {
  EXPECT_EQ(compose({1, 1, 2, -1}, {3, 2, 2, 1}), (PellSolution{7, 5, 2, -1}));
  EXPECT_EQ(compose({3, 1, 2, 7}, {3, 2, 2, 1}), (PellSolution{13, 9, 2, 7}));
  EXPECT_EQ(compose({13, 9, 2, 7}, {1, 0, 2, 1}), (PellSolution{13, 9, 2, 7}));
  EXPECT_THROW(compose({3, 1, 2, 7}, {9, 4, 5, 1}), DomainError);
}

TEST(Pell, ComposePreservesNorm) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    const long long d = 2 + static_cast<long long>(rng() % 300);
    if (!non_square(d)) continue;
    const Integer t = Integer(static_cast<long long>(rng() % 2001)) - 1000;
    const Integer u = Integer(static_cast<long long>(rng() % 2001)) - 1000;
    const PellSolution s{t, u, d, t * t - d * u * u};
    const PellSolution unit = unit_power(fundamental_pell(d), rng() % 4);
    const PellSolution c = compose(s, unit);
    EXPECT_TRUE(c.satisfies());
    EXPECT_EQ(compose(c, conjugate(unit)), s);
  }
}

TEST(Pell, CongruentUnitExamples) {
  const PellSolution u22 = pell_unit_congruent(2, 2);
  EXPECT_EQ(u22, (PellSolution{3, 2, 2, 1}));
  EXPECT_EQ(pell_unit_congruent(2, 1), (PellSolution{3, 2, 2, 1}));
  const PellSolution u53 = pell_unit_congruent(5, 3);
  EXPECT_TRUE(u53.satisfies());
  EXPECT_EQ(mod_floor(u53.t, 3), 1);
  EXPECT_EQ(mod_floor(u53.u, 3), 0);
}

TEST(Pell, CongruentUnitMatchesSpecRoute) {
  // Fundamental solution of T^2 - d m^2 V^2 = 1, raised until T = 1 (mod m).
  for (long long d = 2; d <= 40; ++d) {
    if (!non_square(d)) continue;
    for (long long m = 1; m <= 6; ++m) {
      const PellSolution f = fundamental_pell(Integer(d * m * m));
      PellSolution unit{f.t, f.u * m, d, 1};
      const PellSolution step = unit;
      while (mod_floor(unit.t - 1, m) != 0) unit = compose(unit, step);
      EXPECT_EQ(pell_unit_congruent(d, m), unit) << d << " " << m;
    }
  }
}

TEST(Pell, CongruentExponentMatchesIteration) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const long long d = 2 + static_cast<long long>(rng() % 499);
    const long long m = 1 + static_cast<long long>(rng() % 20);
    if (!non_square(d)) continue;
    const PellSolution eps = fundamental_pell(d);
    Integer t = mod_floor(eps.t, m);
    Integer u = mod_floor(eps.u, m);
    unsigned long long e = 1;
    while (!(mod_floor(t - 1, m) == 0 && u == 0)) {
      const Integer nt = mod_floor(t * eps.t + d * u * eps.u, m);
      u = mod_floor(t * eps.u + u * eps.t, m);
      t = nt;
      ++e;
    }
    EXPECT_EQ(congruent_unit_exponent(d, m), e) << d << " " << m;
    const PellSolution c = pell_unit_congruent(d, m);
    EXPECT_TRUE(c.satisfies());
    EXPECT_EQ(mod_floor(c.t, m), mod_floor(Integer(1), m));
    EXPECT_EQ(mod_floor(c.u, m), 0);
  }
}

TEST(Pell, SolveGeneralExamples) {
  const auto s27 = solve_general(2, 7);
  ASSERT_FALSE(s27.representatives.empty());
  for (const PellSolution& want : {PellSolution{3, 1, 2, 7}, PellSolution{5, 3, 2, 7}}) {
    bool found = false;
    for (const auto& r : s27.representatives) found = found || same_class(r, want);
    EXPECT_TRUE(found) << want.t << "," << want.u;
  }
  const auto s5 = solve_general(5, -1);
  ASSERT_EQ(s5.representatives.size(), 1u);
  EXPECT_TRUE(same_class(s5.representatives[0], {2, 1, 5, -1}));
  EXPECT_TRUE(solve_general(2, 3).representatives.empty());
  EXPECT_THROW(solve_general(4, 3), DomainError);
  EXPECT_THROW(solve_general(2, 0), DomainError);
}

TEST(Pell, SolveGeneralMatchesBoundedSearch) {
  // Every class has a member with |y| within the classical bound; search it directly.
  for (long long d = 2; d <= 30; ++d) {
    if (!non_square(d)) continue;
    const PellSolution eps = fundamental_pell(d);
    for (long long n = -60; n <= 60; ++n) {
      if (n == 0) continue;
      const Integer bound = isqrt(Integer(std::llabs(n)) * (eps.t + 1) / (2 * d)) + 1;
      std::vector<PellSolution> brute;
      for (Integer y = 0; y <= bound; ++y) {
        const Integer x2 = Integer(n) + d * y * y;
        if (!is_perfect_square(x2)) continue;
        const Integer x = isqrt(x2);
        for (const Integer& sx : {x, Integer(-x)}) {
          for (const Integer& sy : {y, Integer(-y)}) brute.push_back({sx, sy, d, n});
        }
      }
      const auto got = solve_general(d, n);
      for (const auto& r : got.representatives) {
        EXPECT_TRUE(r.satisfies());
        EXPECT_EQ(canonical_representative(r, got.unit), r);
      }
      for (std::size_t i = 0; i < got.representatives.size(); ++i) {
        for (std::size_t j = i + 1; j < got.representatives.size(); ++j) {
          EXPECT_FALSE(same_class(got.representatives[i], got.representatives[j])) << d << " " << n;
        }
      }
      for (const auto& b : brute) {
        bool found = false;
        for (const auto& r : got.representatives) found = found || same_class(r, b);
        EXPECT_TRUE(found) << "d=" << d << " n=" << n << " missing class of " << b.t << "," << b.u;
      }
      for (const auto& r : got.representatives) {
        bool found = false;
        for (const auto& b : brute) found = found || same_class(r, b);
        EXPECT_TRUE(found) << "d=" << d << " n=" << n;
      }
    }
  }
}

TEST(Pell, SqrtModRoots) {
  for (long long m = 1; m <= 200; ++m) {
    for (long long d = -5; d <= 30; d += 7) {
      std::vector<Integer> want;
      for (long long z = 0; z < m; ++z) {
        if (mod_floor(Integer(z * z - d), m) == 0) want.push_back(z);
      }
      EXPECT_EQ(sqrt_mod(d, m), want) << d << " mod " << m;
    }
  }
}
