#include <gtest/gtest.h>

#include <numeric>

#include "gl3/arith.hpp"

using namespace gl3;

TEST(Factorize, Examples) {
  EXPECT_TRUE(factorize(1).empty());
  const Factorization f12{{2, 2}, {3, 1}};
  EXPECT_EQ(factorize(12), f12);
  const Factorization f97{{97, 1}};
  EXPECT_EQ(factorize(97), f97);
  EXPECT_THROW(factorize(0), std::invalid_argument);
}

TEST(Factorize, RoundTripAndShape) {
  for (i64 n = 1; n <= 100000; ++n) {
    const auto f = factorize(n);
    ASSERT_EQ(unfactor(f), n);
    for (std::size_t i = 0; i < f.size(); ++i) {
      ASSERT_GE(f[i].exponent, 1);
      if (i) ASSERT_LT(f[i - 1].prime, f[i].prime);
    }
  }
}

TEST(Factorize, LargePrimeAndSemiprime) {
  const i64 p = 2147483647;  // 2^31 - 1
  const Factorization fp{{p, 1}};
  EXPECT_EQ(factorize(p), fp);
  EXPECT_EQ(unfactor(factorize(p * 3)), p * 3);
}

TEST(TrialDivisionOracle, PrimesAgree) {
  auto slow = [](i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  for (i64 n = 0; n <= 5000; ++n) ASSERT_EQ(is_prime(n), slow(n)) << n;
  const auto ps = primes_up_to(13);
  EXPECT_EQ(ps, (std::vector<i64>{2, 3, 5, 7, 11, 13}));
}

TEST(Divisors, Examples) {
  EXPECT_EQ(divisors(6), (std::vector<i64>{1, 2, 3, 6}));
  EXPECT_EQ(divisors(-6), (std::vector<i64>{1, 2, 3, 6}));
  EXPECT_EQ(divisors(1), (std::vector<i64>{1}));
  EXPECT_THROW(divisors(0), std::invalid_argument);
}

TEST(Divisors, BruteForce) {
  for (i64 n = 1; n <= 2000; ++n) {
    std::vector<i64> slow;
    for (i64 d = 1; d <= n; ++d)
      if (n % d == 0) slow.push_back(d);
    ASSERT_EQ(divisors(n), slow);
  }
}

TEST(Mobius, Examples) {
  EXPECT_EQ(mobius(1), 1);
  EXPECT_EQ(mobius(6), 1);
  EXPECT_EQ(mobius(12), 0);
  EXPECT_EQ(mobius(30), -1);
}

TEST(Mobius, DivisorSumIsDelta) {
  for (i64 n = 1; n <= 10000; ++n) {
    int s = 0;
    for (i64 d : divisors(n)) s += mobius(d);
    ASSERT_EQ(s, n == 1 ? 1 : 0) << n;
  }
}

TEST(EulerPhi, CountsUnits) {
  for (i64 n = 1; n <= 500; ++n) {
    i64 count = 0;
    for (i64 a = 1; a <= n; ++a) count += std::gcd(a, n) == 1;
    ASSERT_EQ(euler_phi(n), count);
  }
}

TEST(ModInverse, Examples) {
  EXPECT_EQ(mod_inverse(3, 7), 5);
  for (i64 c = 2; c < 30; ++c) EXPECT_EQ(mod_inverse(1, c), 1);
  EXPECT_EQ(mod_inverse(5, 1), 0);
  EXPECT_THROW(mod_inverse(2, 4), std::domain_error);
  EXPECT_EQ(mod_inverse(-3, 7), 2);
}

TEST(ModInverse, AllUnitsUpTo500) {
  for (i64 c = 2; c <= 500; ++c)
    for (i64 a = 1; a < c; ++a) {
      if (std::gcd(a, c) != 1) continue;
      const i64 b = mod_inverse(a, c);
      ASSERT_GE(b, 1);
      ASSERT_LT(b, c);
      ASSERT_EQ(a * b % c, 1);
    }
}

TEST(UnitGroup, Examples) {
  EXPECT_TRUE(unit_group_generators(1).empty());
  const auto g5 = unit_group_generators(5);
  ASSERT_EQ(g5.size(), 1u);
  EXPECT_EQ(g5[0].order, 4);
  EXPECT_EQ(multiplicative_order(g5[0].generator, 5), 4);
  const auto g8 = unit_group_generators(8);
  ASSERT_EQ(g8.size(), 2u);
  EXPECT_EQ(g8[0].order, 2);
  EXPECT_EQ(g8[1].order, 2);
}

TEST(UnitGroup, OrdersMultiplyToPhi) {
  for (i64 q = 1; q <= 2000; ++q) {
    i64 prod = 1;
    for (const auto& g : unit_group_generators(q)) {
      prod *= g.order;
      ASSERT_EQ(std::gcd(g.generator, q), 1);
      ASSERT_EQ(multiplicative_order(mod(g.generator, q), q), g.order) << q;
    }
    ASSERT_EQ(prod, euler_phi(q)) << q;
  }
}

TEST(UnitGroup, GeneratorsSpanTheGroup) {
  for (i64 q : {7, 9, 12, 16, 20, 24, 45, 60, 64}) {
    const auto gens = unit_group_generators(q);
    std::vector<char> seen(q, 0);
    std::vector<i64> frontier{1 % q};
    seen[1 % q] = 1;
    while (!frontier.empty()) {
      const i64 x = frontier.back();
      frontier.pop_back();
      for (const auto& g : gens) {
        const i64 y = mod(x * g.generator, q);
        if (!seen[y]) {
          seen[y] = 1;
          frontier.push_back(y);
        }
      }
    }
    i64 reached = 0;
    for (char s : seen) reached += s;
    EXPECT_EQ(reached, euler_phi(q)) << q;
  }
}

TEST(Powmod, SmallCases) {
  EXPECT_EQ(powmod(2, 10, 1000), 24);
  EXPECT_EQ(powmod(3, 0, 7), 1);
  EXPECT_EQ(ipow(3, 4), 81);
  EXPECT_EQ(lcm(4, 6), 12);
}
