#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gl3/expsums.hpp"

using namespace gl3;

namespace {

cplx e(double x) { return std::polar(1.0, 2.0 * std::numbers::pi * x); }

cplx kloosterman_naive(i64 a, i64 b, i64 c) {
  if (c == 1) return 1.0;
  cplx s = 0.0;
  for (i64 x = 1; x < c; ++x) {
    if (std::gcd(x, c) != 1) continue;
    i64 xb = 1;
    while (x * xb % c != 1) ++xb;
    s += e(static_cast<double>(mod(a * x + b * xb, c)) / static_cast<double>(c));
  }
  return s;
}

DirichletCharacter nonprincipal(i64 q) {
  for (const auto& chi : enumerate_characters(q, true))
    if (!chi.is_principal()) return chi;
  throw std::logic_error("none");
}

}  // namespace

TEST(Kloosterman, Examples) {
  EXPECT_NEAR(std::abs(kloosterman(1, 1, 1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(kloosterman(1, 1, 3) + 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(kloosterman(2, 1, 3) - 2.0), 0.0, 1e-12);
}

TEST(Kloosterman, NaiveOracle) {
  for (i64 c = 1; c <= 40; ++c)
    for (i64 a = -c; a <= c; a += 3)
      for (i64 b = -c; b <= c; b += 2) ASSERT_NEAR(std::abs(kloosterman(a, b, c) - kloosterman_naive(a, b, c)), 0.0, 1e-10);
}

TEST(Kloosterman, TwistedMultiplicativityOracle) {
  for (i64 c = 1; c <= 120; ++c)
    for (i64 a : {0, 1, 2, 5, -7})
      for (i64 b : {0, 1, 3, -4}) ASSERT_NEAR(std::abs(kloosterman(a, b, c) - kloosterman_crt(a, b, c)), 0.0, 1e-9) << c;
}

TEST(Kloosterman, RealitySymmetryWeil) {
  for (i64 c = 1; c <= 200; ++c) {
    const KloostermanEvaluator S(c);
    for (i64 a = 0; a < c; a += std::max<i64>(1, c / 17))
      for (i64 b = 0; b < c; b += std::max<i64>(1, c / 13)) {
        ASSERT_LT(std::abs(S(a, b).imag()), 1e-9);
        ASSERT_NEAR(std::abs(S(a, b) - S(b, a)), 0.0, 1e-9);
        if (is_prime(c) && a % c && b % c) ASSERT_LE(std::abs(S(a, b)), 2.0 * std::sqrt(static_cast<double>(c)) + 1e-9);
      }
  }
}

TEST(Kloosterman, RowMatchesPointEvaluation) {
  const KloostermanEvaluator S(36);
  const auto row = S.row(5);
  for (i64 a = 0; a < 36; ++a) EXPECT_NEAR(std::abs(row[a] - S(a, 5)), 0.0, 1e-12);
}

TEST(RamanujanSum, Examples) {
  EXPECT_NEAR(std::abs(ramanujan_sum(5, 0) - 4.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(ramanujan_sum(5, 1) + 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(ramanujan_sum(4, 2) + 2.0), 0.0, 1e-12);
}

TEST(RamanujanSum, MobiusFormulaAndKloosterman) {
  // c_q(m) = sum_{d | gcd(q,m)} mu(q/d) d, and c_q(m) = S(0, m; q).
  for (i64 q = 1; q <= 60; ++q)
    for (i64 m = 0; m <= 30; ++m) {
      i64 expect = 0;
      for (i64 d : divisors(q))
        if (m % d == 0) expect += mobius(q / d) * d;
      ASSERT_NEAR(std::abs(ramanujan_sum(q, m) - static_cast<double>(expect)), 0.0, 1e-9);
      ASSERT_NEAR(std::abs(ramanujan_sum(q, m) - kloosterman(0, m, q)), 0.0, 1e-9);
    }
}

TEST(Reduction, Examples) {
  const auto chi3 = nonprincipal(3);
  EXPECT_LT(char_kloosterman_reduction_residual(chi3, 3, 1, 1, 1), 1e-12);
  for (i64 m2 = -5; m2 <= 5; ++m2) EXPECT_LT(char_kloosterman_reduction_residual(principal_character(1), 1, 1, 1, m2), 1e-12);
  EXPECT_LT(char_kloosterman_reduction_residual(nonprincipal(4), 4, 1, 2, 3), 1e-12);
}

TEST(Reduction, PreconditionsSignal) {
  const auto chi = nonprincipal(5);
  EXPECT_THROW(char_kloosterman_reduction_residual(chi, 5, 1, 3, 1), std::invalid_argument);
  EXPECT_THROW(char_kloosterman_reduction_residual(chi, 5, 0, 1, 1), std::invalid_argument);
  EXPECT_THROW(char_kloosterman_reduction_residual(chi, 10, 1, 1, 1), std::invalid_argument);
}

TEST(Reduction, PrimitiveCharactersAllBranches) {
  for (i64 c = 1; c <= 24; ++c)
    for (const auto& chi : enumerate_characters(c, true))
      for (i64 m : {1, -1, 2, -2, 6, -6})
        for (i64 m1 : divisors(c * m))
          for (i64 m2 = -6; m2 <= 6; ++m2) ASSERT_LT(char_kloosterman_reduction_residual(chi, c, m, m1, m2), 1e-9);
}

TEST(Reduction, DivisibleBranchHoldsForEveryCharacter) {
  for (i64 c = 1; c <= 20; ++c)
    for (const auto& chi : enumerate_characters(c))
      for (i64 m : {1, -2, 6})
        for (i64 m1 : divisors(m))
          for (i64 m2 = -6; m2 <= 6; ++m2) ASSERT_LT(char_kloosterman_reduction_residual(chi, c, m, m1, m2), 1e-9);
}

TEST(Reduction, VanishingBranchFailsForImprimitiveCharacters) {
  // Principal character mod 2, m = 1, m1 = 2: the left side is S(a, m2; 1) = 1.
  EXPECT_NEAR(char_kloosterman_reduction_residual(principal_character(2), 2, 1, 2, 0), 1.0, 1e-12);
  // m1 = cm with c > 1: every S(a, m2; 1) is 1, so the left side is phi(c) while the claimed value is 0.
  for (i64 c : {2, 3, 4, 6, 10})
    for (i64 m2 = -5; m2 <= 5; ++m2)
      EXPECT_NEAR(char_kloosterman_reduction_residual(principal_character(c), c, 1, c, m2),
                  static_cast<double>(euler_phi(c)), 1e-10);
}

TEST(Reduction, SweepAgreesWithPointwiseResidual) {
  const auto st = kloosterman_reduction_sweep(12, {1, -1, 2, -2}, 4, 1e-8);
  double worst = 0.0;
  long cases = 0;
  for (i64 c = 1; c <= 12; ++c)
    for (const auto& chi : enumerate_characters(c))
      for (i64 m : {1, -1, 2, -2})
        for (i64 m1 : divisors(c * m))
          for (i64 m2 = -4; m2 <= 4; ++m2) {
            worst = std::max(worst, char_kloosterman_reduction_residual(chi, c, m, m1, m2));
            ++cases;
          }
  EXPECT_EQ(st.cases, cases);
  EXPECT_NEAR(st.worst, worst, 1e-9);
  EXPECT_LT(st.worst_primitive, 1e-9);
  EXPECT_EQ(st.failures, st.failures_imprimitive_vanishing);
}

TEST(AdditiveCollapse, Examples) {
  const auto chi3 = nonprincipal(3);
  const auto trivial = principal_character(1);
  EXPECT_LT(additive_collapse_residual(trivial, chi3, 1), 1e-12);
  const cplx lhs = e(-1.0 / 3) - e(-2.0 / 3);
  EXPECT_NEAR(std::abs(lhs - cplx(0.0, -std::sqrt(3.0))), 0.0, 1e-12);
  EXPECT_LT(additive_collapse_residual(trivial, chi3, 3), 1e-12);
  EXPECT_LT(additive_collapse_residual(trivial, chi3, 6), 1e-12);
  for (const auto& psi : enumerate_characters(5, true))
    for (i64 n = 0; n < 5; ++n) EXPECT_LT(additive_collapse_residual(psi, principal_character(5), n), 1e-12);
}

TEST(AdditiveCollapse, RejectsImprimitiveProduct) {
  EXPECT_THROW(additive_collapse_residual(principal_character(1), principal_character(4), 1), std::invalid_argument);
}

TEST(AdditiveCollapse, Sweep) {
  const auto st = additive_collapse_sweep(20);
  EXPECT_GT(st.pairs, 0);
  EXPECT_LT(st.worst, 1e-9);
}
