#pragma once

// Complex log-gamma, K-Bessel functions of complex order, the Fourier
// transform of (u^2+1)^{-s} u^k, and the gamma factors of the GL(3)
// functional equations.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gl3/quadrature.hpp"

namespace gl3 {

using cplx = std::complex<double>;

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

}  // namespace detail

/// log Gamma(z): recurrence up to Re z >= 10, then the Stirling series.
inline cplx log_gamma(cplx z) {
  if (detail::is_nonpositive_integer(z))
    throw PoleError("log_gamma: pole at z = " + std::to_string(z.real()));
  cplx shift{0.0, 0.0};
  while (z.real() < 10.0) {
    shift += std::log(z);
    z += 1.0;
  }
  // B_{2k} / (2k (2k-1)) for k = 1..10.
  static constexpr std::array<double, 10> c{1.0 / 12,         -1.0 / 360,        1.0 / 1260,
                                            -1.0 / 1680,      1.0 / 1188,        -691.0 / 360360,
                                            1.0 / 156,        -3617.0 / 122400,  43867.0 / 244188,
                                            -174611.0 / 125400};
  const cplx zi = 1.0 / z, zi2 = zi * zi;
  cplx series{0.0, 0.0}, pw = zi;
  for (double ck : c) {
    series += ck * pw;
    pw *= zi2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series - shift;
}

inline cplx complex_gamma(cplx z) { return std::exp(log_gamma(z)); }

/// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt.
inline cplx bessel_k(cplx nu, double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k: x must be positive");
  const double re = std::abs(nu.real());
  if (re > 10.0) throw std::domain_error("bessel_k: |Re nu| must not exceed 10");
  // Truncate where the envelope exp(-x cosh t + |Re nu| t) drops below 1e-18 of its peak.
  const double peak_t = re > x ? std::asinh(re / x) : 0.0;
  const double peak = -x * std::cosh(peak_t) + re * peak_t;
  double T = peak_t + 1.0;
  while (-x * std::cosh(T) + re * T > peak - 41.5) T += 0.5;
  auto f = [&](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(nu * t); };
  return integrate(f, 0.0, T, 0.0, 1e-14, 4000).value;
}

/// LHS and RHS of int e(uy) (u^2+1)^{-s} u^k du = (i sign y)^k 2 pi^s |y|^{s-1/2} / Gamma(s) K_{s-1/2-k}(2 pi |y|).
struct FourierBesselSides {
  cplx lhs, rhs;
};

inline FourierBesselSides fourier_bessel_sides(cplx s, int k, double y) {
  if (k != 0 && k != 1) throw std::invalid_argument("fourier_bessel: k must be 0 or 1");
  if (!(s.real() > 0.5) || (k == 1 && !(s.real() > 1.0)))
    throw std::domain_error("fourier_bessel: need Re s > 1/2, and Re s > 1 for k = 1");
  if (y == 0.0) throw std::domain_error("fourier_bessel: y must be nonzero");
  const double pi = std::numbers::pi;
  const double ay = std::abs(y), sgn = y > 0 ? 1.0 : -1.0;
  // Even part of the integrand on [0, inf): cos for k = 0, i sin u for k = 1.
  auto f = [&](double u) -> cplx {
    const cplx env = std::pow(cplx{u * u + 1.0, 0.0}, -s);
    return k == 0 ? 2.0 * std::cos(2.0 * pi * u * ay) * env : 2.0 * std::sin(2.0 * pi * u * ay) * u * env;
  };
  // Half-period panels between consecutive zeros of the oscillation.
  const double h = 0.5 / ay;
  std::vector<cplx> partial;
  cplx acc{0.0, 0.0};
  double a = 0.0;
  const int panels = 80;
  for (int j = 0; j < panels; ++j) {
    const double b = (k == 0 ? (j + 0.5) : (j + 1.0)) * h;
    acc += integrate(f, a, b, 1e-16, 1e-13, 400).value;
    partial.push_back(acc);
    a = b;
  }
  cplx lhs = wynn_epsilon(partial).value;
  if (k == 1) lhs *= cplx{0.0, sgn};
  const cplx pre = k == 0 ? cplx{1.0, 0.0} : cplx{0.0, sgn};
  const cplx rhs = pre * 2.0 * std::pow(cplx{pi, 0.0}, s) * std::pow(cplx{ay, 0.0}, s - 0.5) *
                   std::exp(-log_gamma(s)) * bessel_k(s - 0.5 - static_cast<double>(k), 2.0 * pi * ay);
  return {lhs, rhs};
}

inline double fourier_bessel_identity_residual(cplx s, int k, double y) {
  const auto [lhs, rhs] = fourier_bessel_sides(s, k, y);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

/// Spectral data: alpha = -nu1 - 2 nu2 + 1, beta = -nu1 + nu2, and gamma
/// stored as -(alpha + beta) so that alpha + beta + gamma vanishes exactly.
struct GammaData {
  cplx nu1, nu2;
  cplx alpha, beta, gamma;
  int psi_parity = 1;          // psi(-1)
  cplx epsilon{1.0, 0.0};      // root number, |epsilon| = 1
  long level = 1;
  cplx tau_psi{1.0, 0.0};      // Gauss sum of the nebentypus

  static GammaData from_nu(cplx nu1, cplx nu2, int psi_parity = 1, cplx epsilon = 1.0, long level = 1,
                           cplx tau_psi = 1.0) {
    if (std::abs(std::abs(epsilon) - 1.0) > 1e-12) throw std::invalid_argument("GammaData: |epsilon| must be 1");
    if (psi_parity != 1 && psi_parity != -1) throw std::invalid_argument("GammaData: parity must be +1 or -1");
    GammaData g{nu1, nu2, -nu1 - 2.0 * nu2 + 1.0, -nu1 + nu2, 0.0, psi_parity, epsilon, level, tau_psi};
    g.gamma = -(g.alpha + g.beta);
    return g;
  }

  /// Keeps (alpha, beta) exactly; gamma = -(alpha + beta).
  static GammaData from_alpha_beta(cplx alpha, cplx beta, int psi_parity = 1, cplx epsilon = 1.0, long level = 1,
                                   cplx tau_psi = 1.0) {
    const cplx nu1 = (1.0 - alpha - 2.0 * beta) / 3.0;
    GammaData g = from_nu(nu1, nu1 + beta, psi_parity, epsilon, level, tau_psi);
    g.alpha = alpha;
    g.beta = beta;
    g.gamma = -(alpha + beta);
    return g;
  }

  std::array<cplx, 3> params() const { return {alpha, beta, gamma}; }
};

namespace detail {

/// prod_j Gamma((a + sa alpha_j)/2) / Gamma((b + sb alpha_j)/2) in log space.
inline cplx log_gamma_ratio(const GammaData& g, cplx a, double sa, cplx b, double sb) {
  cplx acc{0.0, 0.0};
  for (const cplx& x : g.params()) acc += log_gamma((a + sa * x) / 2.0) - log_gamma((b + sb * x) / 2.0);
  return acc;
}

}  // namespace detail

/// G_k(s) = prod Gamma((1+k-s-alpha_j)/2) / Gamma((s+k+alpha_j)/2).
inline cplx gamma_factor_Gk(cplx s, const GammaData& g, int k) {
  return std::exp(detail::log_gamma_ratio(g, 1.0 + k - s, -1.0, s + static_cast<double>(k), 1.0));
}

/// G(s) = (G_0(s) + i sign G_1(s)) / 2, sign = sign(m m2).
inline cplx gamma_factor_G(cplx s, const GammaData& g, int sign) {
  return 0.5 * (gamma_factor_Gk(s, g, 0) + cplx{0.0, static_cast<double>(sign)} * gamma_factor_Gk(s, g, 1));
}

/// Xi(s) = tau(psi chi) tau(chi)^2 c^{-3s} i^kappa pi^{3(s-1/2)}
///         prod Gamma((1-s+kappa+alpha_j)/2) / Gamma((s+kappa-alpha_j)/2).
inline cplx xi_factor(cplx s, const GammaData& g, int kappa, cplx tau_psichi, cplx tau_chi, double c) {
  if (kappa != 0 && kappa != 1) throw std::invalid_argument("xi_factor: kappa must be 0 or 1");
  const double pi = std::numbers::pi;
  const cplx logs = detail::log_gamma_ratio(g, 1.0 - s + static_cast<double>(kappa), 1.0,
                                            s + static_cast<double>(kappa), -1.0) +
                    3.0 * (s - 0.5) * std::log(pi) - 3.0 * s * std::log(c);
  const cplx ik = kappa == 0 ? cplx{1.0, 0.0} : cplx{0.0, 1.0};
  return tau_psichi * tau_chi * tau_chi * ik * std::exp(logs);
}

enum class Branch { plus, minus };

/// k used by G_plus / G_minus: (0, 1) when psi is even, (1, 0) when psi is odd.
inline int branch_k(Branch b, int psi_parity) {
  const int k = b == Branch::plus ? 0 : 1;
  return psi_parity == 1 ? k : 1 - k;
}

/// G_pm(s) = i^k tau(psi) epsilon N^{1/2-s} pi^{3(s-1/2)} G_k(s).
inline cplx g_pm_factor(cplx s, const GammaData& g, Branch b) {
  const int k = branch_k(b, g.psi_parity);
  const double pi = std::numbers::pi;
  const cplx logs = detail::log_gamma_ratio(g, 1.0 + k - s, -1.0, s + static_cast<double>(k), 1.0) +
                    (0.5 - s) * std::log(static_cast<double>(g.level)) + 3.0 * (s - 0.5) * std::log(pi);
  const cplx ik = k == 0 ? cplx{1.0, 0.0} : cplx{0.0, 1.0};
  return ik * g.tau_psi * g.epsilon * std::exp(logs);
}

/// C = pi^{1/2 - 3 nu1 - 3 nu2} Gamma(3 nu1/2) Gamma(3 nu2/2) Gamma((3 nu1 + 3 nu2 - 1)/2).
inline cplx whittaker_constant(const GammaData& g) {
  const double pi = std::numbers::pi;
  return std::exp((0.5 - 3.0 * g.nu1 - 3.0 * g.nu2) * std::log(pi) + log_gamma(1.5 * g.nu1) +
                  log_gamma(1.5 * g.nu2) + log_gamma((3.0 * g.nu1 + 3.0 * g.nu2 - 1.0) / 2.0));
}

}  // namespace gl3
