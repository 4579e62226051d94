#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gl3/characters.hpp"
#include "gl3/special.hpp"

using namespace gl3;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// K_0(x) = -(log(x/2) + euler_gamma) I_0(x) + sum_k (x^2/4)^k / (k!)^2 H_k.
double k0_series(double x) {
  const double eg = 0.57721566490153286061;
  double term = 1.0, i0 = 1.0, rest = 0.0, harmonic = 0.0;
  for (int k = 1; k < 60; ++k) {
    term *= (x * x / 4.0) / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    i0 += term;
    rest += term * harmonic;
  }
  return -(std::log(x / 2.0) + eg) * i0 + rest;
}

}  // namespace

TEST(LogGamma, Examples) {
  EXPECT_NEAR(std::abs(log_gamma(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(log_gamma(0.5) - 0.5 * std::log(kPi)), 0.0, 1e-14);
  const cplx z{0.3, 2.0};
  const cplx reflect = complex_gamma(z) * complex_gamma(1.0 - z) * std::sin(kPi * z) / kPi;
  EXPECT_NEAR(std::abs(reflect - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(complex_gamma(5.0) - 24.0), 0.0, 1e-12);
}

TEST(LogGamma, AgreesWithStdOnPositiveReals) {
  for (double x = 0.05; x < 20.0; x += 0.173)
    ASSERT_NEAR(log_gamma(x).real(), std::lgamma(x), 1e-12 * std::max(1.0, std::abs(std::lgamma(x)))) << x;
}

TEST(LogGamma, RecurrenceAndReflectionOnStrip) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> re(-19.5, 19.5), im(-50.0, 50.0);
  for (int i = 0; i < 500; ++i) {
    const cplx z{re(rng), im(rng)};
    if (std::abs(z.imag()) < 0.3) continue;
    // log Gamma(z+1) - log Gamma(z) = log z modulo 2 pi i.
    const cplx d = log_gamma(z + 1.0) - log_gamma(z) - std::log(z);
    ASSERT_NEAR(std::abs(std::exp(d) - 1.0), 0.0, 1e-12) << z;
    const cplx r = std::exp(log_gamma(z) + log_gamma(1.0 - z)) * std::sin(kPi * z) / kPi;
    ASSERT_NEAR(std::abs(r - 1.0), 0.0, 1e-10) << z;
  }
}

TEST(LogGamma, PrincipalBranchIsContinuousInImaginaryDirection) {
  cplx prev = log_gamma(cplx{0.5, 0.0});
  for (double t = 0.05; t < 40.0; t += 0.05) {
    const cplx cur = log_gamma(cplx{0.5, t});
    ASSERT_LT(std::abs(cur - prev), 0.5) << t;
    prev = cur;
  }
}

TEST(LogGamma, Poles) {
  EXPECT_THROW(log_gamma(0.0), PoleError);
  EXPECT_THROW(log_gamma(-3.0), PoleError);
  EXPECT_NO_THROW(log_gamma(cplx(-3.0, 1e-3)));
}

TEST(BesselK, HalfIntegerClosedForms) {
  for (double x : {0.1, 0.5, 1.0, 2.0 * kPi, 15.0}) {
    const double k12 = std::sqrt(kPi / (2.0 * x)) * std::exp(-x);
    EXPECT_LT(rel(bessel_k(0.5, x), k12), 1e-10) << x;
    EXPECT_LT(rel(bessel_k(1.5, x), k12 * (1.0 + 1.0 / x)), 1e-10) << x;
    EXPECT_LT(rel(bessel_k(-2.5, x), k12 * (1.0 + 3.0 / x + 3.0 / (x * x))), 1e-10) << x;
  }
}

TEST(BesselK, EvenInOrder) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-4.0, 4.0), xs(0.1, 12.0);
  for (int i = 0; i < 50; ++i) {
    const cplx nu{u(rng), u(rng)};
    const double x = xs(rng);
    EXPECT_LT(rel(bessel_k(nu, x), bessel_k(-nu, x)), 1e-10);
  }
}

TEST(BesselK, SeriesOracleForOrderZero) {
  EXPECT_NEAR(bessel_k(0.0, 1.0).real(), 0.4210244382, 1e-10);
  for (double x : {0.1, 0.3, 1.0, 2.5, 5.0}) EXPECT_LT(std::abs(bessel_k(0.0, x).real() / k0_series(x) - 1.0), 1e-10) << x;
}

TEST(BesselK, DomainErrors) {
  EXPECT_THROW(bessel_k(0.0, 0.0), std::domain_error);
  EXPECT_THROW(bessel_k(11.0, 1.0), std::domain_error);
}

TEST(FourierBessel, SpotValue) {
  const auto sides = fourier_bessel_sides(1.0, 0, 1.0);
  const double expect = kPi * std::exp(-2.0 * kPi);
  EXPECT_NEAR(std::abs(sides.lhs - expect), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(sides.rhs - expect), 0.0, 1e-8);
}

TEST(FourierBessel, Grid) {
  for (double s : {0.8, 1.0, 1.7})
    for (int k : {0, 1}) {
      if (k == 1 && s <= 1.0) continue;
      for (double y : {1.0, -1.0, 2.5, -2.5}) EXPECT_LT(fourier_bessel_identity_residual(s, k, y), 1e-6) << s << " " << k << " " << y;
    }
  EXPECT_LT(fourier_bessel_identity_residual(cplx(1.3, 0.7), 0, 1.5), 1e-6);
}

TEST(FourierBessel, OddCaseFlipsSign) {
  const auto a = fourier_bessel_sides(1.7, 1, 2.5);
  const auto b = fourier_bessel_sides(1.7, 1, -2.5);
  EXPECT_LT(rel(a.lhs, -b.lhs), 1e-9);
  EXPECT_LT(rel(a.rhs, -b.rhs), 1e-12);
}

TEST(FourierBessel, DomainErrors) {
  EXPECT_THROW(fourier_bessel_sides(0.4, 0, 1.0), std::domain_error);
  EXPECT_THROW(fourier_bessel_sides(1.0, 1, 1.0), std::domain_error);
  EXPECT_THROW(fourier_bessel_sides(1.5, 2, 1.0), std::invalid_argument);
  EXPECT_THROW(fourier_bessel_sides(1.5, 0, 0.0), std::domain_error);
}

TEST(GammaData, ExactSumAndValidation) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-(1L << 22), 1L << 22);
  for (int i = 0; i < 100; ++i) {
    const cplx nu1{std::ldexp(static_cast<double>(d(rng)), -20), std::ldexp(static_cast<double>(d(rng)), -20)};
    const cplx nu2{std::ldexp(static_cast<double>(d(rng)), -20), std::ldexp(static_cast<double>(d(rng)), -20)};
    const auto g = GammaData::from_nu(nu1, nu2);
    EXPECT_EQ(g.alpha + g.beta + g.gamma, cplx(0.0));
    EXPECT_EQ(g.gamma, 2.0 * nu1 + nu2 - 1.0);
  }
  EXPECT_THROW(GammaData::from_nu(0.3, 0.3, 1, cplx(1.0, 0.1)), std::invalid_argument);
  EXPECT_THROW(GammaData::from_nu(0.3, 0.3, 0), std::invalid_argument);
  const auto h = GammaData::from_alpha_beta(cplx(0.0, 1.25), cplx(0.0, -0.5));
  EXPECT_EQ(h.alpha, cplx(0.0, 1.25));
  EXPECT_EQ(h.gamma, cplx(0.0, -0.75));
  EXPECT_NEAR(std::abs(h.alpha - (-h.nu1 - 2.0 * h.nu2 + 1.0)), 0.0, 1e-15);
}

TEST(GammaFactors, SplitAssemblyAndCollapse) {
  const auto g = GammaData::from_nu(cplx(0.4, 0.2), cplx(0.3, -0.7));
  for (const cplx s : {cplx(0.5, 3.0), cplx(0.2, -1.0), cplx(0.7, 25.0)})
    for (int sign : {1, -1}) {
      const cplx direct = 0.5 * (gamma_factor_Gk(s, g, 0) + cplx(0.0, sign) * gamma_factor_Gk(s, g, 1));
      EXPECT_LT(rel(gamma_factor_G(s, g, sign), direct), 1e-12);
    }
  const auto zero = GammaData::from_nu(1.0 / 3.0, 1.0 / 3.0);
  for (const cplx s : {cplx(0.3, 1.0), cplx(0.5, 7.0)}) {
    const cplx expect = std::pow(complex_gamma((1.0 - s) / 2.0) / complex_gamma(s / 2.0), 3);
    EXPECT_LT(rel(gamma_factor_Gk(s, zero, 0), expect), 1e-12);
  }
  const auto real = GammaData::from_nu(0.21, 0.37);
  const cplx s{0.3, 4.0};
  EXPECT_LT(rel(gamma_factor_Gk(std::conj(s), real, 0), std::conj(gamma_factor_Gk(s, real, 0))), 1e-12);
}

TEST(GammaFactors, NoOverflowHighOnCriticalLine) {
  const auto g = GammaData::from_alpha_beta(cplx(0.0, 2.0), cplx(0.0, -1.0));
  for (double t : {30.0, 100.0, 300.0}) {
    const cplx v = gamma_factor_Gk(cplx(0.5, t), g, 0);
    EXPECT_TRUE(std::isfinite(v.real()) && std::isfinite(v.imag()));
    EXPECT_NEAR(std::abs(v), 1.0, 1e-9);
  }
}

TEST(Xi, UnitarityParityAndScaling) {
  const auto g = GammaData::from_alpha_beta(cplx(0.0, 0.9), cplx(0.0, -2.1));
  for (i64 c : {3, 4, 5, 7, 8, 12})
    for (const auto& chi : enumerate_characters(c, true)) {
      const int kappa = chi.parity() == 1 ? 0 : 1;
      const cplx tau = gauss_sum(chi);
      for (double t : {0.0, 1.0, 2.3}) EXPECT_NEAR(std::abs(xi_factor(cplx(0.5, t), g, kappa, tau, tau, static_cast<double>(c))), 1.0, 1e-8);
    }
  const cplx s{0.7, 1.3};
  const cplx a = xi_factor(s, g, 0, 1.0, 1.0, 1.0), b = xi_factor(s, g, 0, 1.0, 1.0, 6.0);
  EXPECT_LT(rel(b, a * std::exp(-3.0 * s * std::log(6.0))), 1e-12);
  EXPECT_THROW(xi_factor(s, g, 2, 1.0, 1.0, 1.0), std::invalid_argument);
}

TEST(Xi, InverseOfDualGammaFactor) {
  // Xi(s) G_kappa(1-s) = tau(psi chi) tau(chi)^2 c^{-3s} i^kappa pi^{3(s-1/2)}.
  const auto g = GammaData::from_nu(cplx(0.35, 0.4), cplx(0.3, -0.2));
  const cplx s{0.6, 2.2};
  const cplx tpc{1.2, -0.4}, tc{0.3, 1.7};
  for (int kappa : {0, 1}) {
    const cplx lhs = xi_factor(s, g, kappa, tpc, tc, 5.0) * gamma_factor_Gk(1.0 - s, g, kappa);
    const cplx ik = kappa ? cplx(0.0, 1.0) : cplx(1.0, 0.0);
    const cplx rhs = tpc * tc * tc * std::exp(-3.0 * s * std::log(5.0)) * ik * std::exp(3.0 * (s - 0.5) * std::log(kPi));
    EXPECT_LT(rel(lhs, rhs), 1e-12);
  }
}

TEST(GPm, BranchTableAndLevelOneCollapse) {
  EXPECT_EQ(branch_k(Branch::plus, 1), 0);
  EXPECT_EQ(branch_k(Branch::minus, 1), 1);
  EXPECT_EQ(branch_k(Branch::plus, -1), 1);
  EXPECT_EQ(branch_k(Branch::minus, -1), 0);
  const auto g = GammaData::from_nu(cplx(0.3, 0.5), cplx(0.4, -0.1));
  const cplx s{0.4, 3.0};
  const cplx scale = std::exp(3.0 * (s - 0.5) * std::log(kPi));
  EXPECT_LT(rel(g_pm_factor(s, g, Branch::plus), scale * gamma_factor_Gk(s, g, 0)), 1e-12);
  EXPECT_LT(rel(g_pm_factor(s, g, Branch::minus), cplx(0.0, 1.0) * scale * gamma_factor_Gk(s, g, 1)), 1e-12);
  const auto odd = GammaData::from_nu(cplx(0.3, 0.5), cplx(0.4, -0.1), -1, std::polar(1.0, 0.4), 7, cplx(0.0, std::sqrt(7.0)));
  const cplx lvl = std::exp((0.5 - s) * std::log(7.0));
  EXPECT_LT(rel(g_pm_factor(s, odd, Branch::plus),
                cplx(0.0, 1.0) * cplx(0.0, std::sqrt(7.0)) * std::polar(1.0, 0.4) * lvl * scale * gamma_factor_Gk(s, odd, 1)),
            1e-12);
}

TEST(WhittakerConstant, FiniteAtGenericParameters) {
  const cplx v = whittaker_constant(GammaData::from_nu(cplx(0.4, 1.0), cplx(0.5, -0.3)));
  EXPECT_TRUE(std::isfinite(v.real()) && std::isfinite(v.imag()));
}
