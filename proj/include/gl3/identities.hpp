#pragma once

// Builders and verifiers for the finite identities behind the Voronoi formula
// in the coprime scenario: the coefficientized Ramanujan lemma, the expansion
// of the double Dirichlet series Z(s,w), its rearrangement after the
// functional equation, the Moebius assembly of the bold series, and the
// character-orthogonality passage from multiplicative to additive twists.
//
// Carrier conventions: n^{-(2w-s)} -> (X,Y) = (n^2, 1/n); m^{-s} -> (1, m);
// l^{-(2w-2s+1)} -> (l^2, 1/l^2) with coefficient 1/l; c^{-3s} -> Y = c^3.

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gl3/arith.hpp"
#include "gl3/characters.hpp"
#include "gl3/formal.hpp"
#include "gl3/hecke.hpp"

namespace gl3 {

/// GaussSumTable per modulus for one character, built on first use.
class GaussSumCache {
 public:
  explicit GaussSumCache(DirichletCharacter chi) : chi_(std::move(chi)) {}
  cplx operator()(i64 C, i64 n) {
    auto it = tables_.find(C);
    if (it == tables_.end()) it = tables_.emplace(C, GaussSumTable(chi_, C)).first;
    return it->second(n);
  }

 private:
  DirichletCharacter chi_;
  std::map<i64, GaussSumTable> tables_;
};

/// The coprimality hypotheses shared by every identity in this module.
struct IdentityCase {
  HeckeCoefficientModel model;
  DirichletCharacter chi_star;
  i64 q;
  Window window;

  IdentityCase(HeckeCoefficientModel F, DirichletCharacter chi, i64 q_, Window w)
      : model(std::move(F)), chi_star(std::move(chi)), q(q_), window(w) {
    validate(model, chi_star, q);
  }

  static void validate(const HeckeCoefficientModel& F, const DirichletCharacter& chi, i64 q) {
    const i64 N = F.level();
    if (!chi.is_primitive())
      throw std::invalid_argument("identity case: character mod " + std::to_string(chi.modulus()) +
                                  " is not primitive");
    if (q < 1 || std::gcd(q, N) != 1)
      throw std::invalid_argument("identity case: q = " + std::to_string(q) + " must be coprime to N = " +
                                  std::to_string(N));
    if (std::gcd(chi.modulus(), N) != 1)
      throw std::invalid_argument("identity case: c* = " + std::to_string(chi.modulus()) +
                                  " must be coprime to N = " + std::to_string(N));
  }
};

/// max over l <= l_max, gcd(l,N)=1, of
/// |sum_{l1 l2 = l} g(chi*, l1 c*, m) chi*(l2) - [l | m] tau(chi*) conj(chi*)(m/l) l|.
inline double ramanujan_lemma_residual(const DirichletCharacter& chi_star, i64 m, i64 N, i64 l_max) {
  const i64 cs = chi_star.modulus();
  if (std::gcd(cs, N) != 1) throw std::invalid_argument("ramanujan_lemma_residual: c* must be coprime to N");
  if (!chi_star.is_primitive()) throw std::invalid_argument("ramanujan_lemma_residual: character must be primitive");
  const cplx tau = gauss_sum(chi_star);
  double worst = 0.0;
  for (i64 l = 1; l <= l_max; ++l) {
    if (std::gcd(l, N) != 1) continue;
    cplx lhs{0.0, 0.0};
    for (i64 l1 : divisors(l)) lhs += generalized_gauss_sum(chi_star, l1 * cs, m) * chi_star(l / l1);
    const cplx rhs = m % l == 0 ? tau * std::conj(chi_star(m / l)) * static_cast<double>(l) : cplx{0.0, 0.0};
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

namespace detail {

inline PositiveRational ratio(u64 num, u64 den) { return PositiveRational::make(num, den); }

/// Window a shifted component must be complete on: the guard's own rule
/// applied to the single monomial with Y = y.
inline Window component_window(const Window& w, const PositiveRational& y) {
  return {kUnbounded, sat_mul(w.P_max, y.den), sat_mul(w.Q_max, y.num)};
}

inline void accumulate(FormalSeries& target, const FormalSeries& part) {
  if (!part.window().covers(target.window()))
    throw CompletenessError("accumulate: part complete on " + to_string(part.window()) + " but target needs " +
                            to_string(target.window()));
  for (const auto& [k, c] : part.terms()) target.add_term(k, c);
}

}  // namespace detail

/// H(q, l, chi*, s) = sum_n A(q,n) g(conj chi*, l c*, n) n^{-s} l^{2s-1}:
/// X = 1, Y = n / l^2, coefficient A(q,n) g / l.
inline FormalSeries build_H(i64 q, i64 l, const DirichletCharacter& chi_star, const HeckeCoefficientModel& F,
                            const Window& window, GaussSumCache* cache = nullptr) {
  const i64 c = l * chi_star.modulus();
  if (std::gcd(c, F.level()) != 1) throw std::invalid_argument("build_H: l c* must be coprime to N");
  GaussSumCache local(chi_star.conj());
  GaussSumCache& g = cache ? *cache : local;
  const u64 l2 = static_cast<u64>(l * l);
  FormalSeries out({kUnbounded, window.P_max, window.Q_max}, {kUnbounded, l2});
  for (u64 n : indices_for_ratio_times(1, l2, window)) {
    const i64 ni = static_cast<i64>(n);
    const cplx gv = g(c, ni);
    if (gv == cplx{0.0, 0.0}) continue;
    out.add_term({1, detail::ratio(n, l2)}, F(q, ni) * gv / static_cast<double>(l));
  }
  out.prune();
  return out;
}

/// G(q, l, chi*, s) with the factor G_pm(s) kept as a degree-one symbol:
/// sum_{d | q l} sum_n chi*(-N) psi(q c) c* A_Ft(d,n)/(dn) g(chi*, c, d) g(chi*, qc/d, n),
/// Y = l c*^3 q / (d^2 n), with c = l c*. `g_conj` is a cache for chi* itself.
inline FormalSeries build_G(i64 q, i64 l, const DirichletCharacter& chi_star, const HeckeCoefficientModel& Ft,
                            const DirichletCharacter& psi, const Window& window, GaussSumCache* cache = nullptr) {
  const i64 cs = chi_star.modulus();
  const i64 c = l * cs;
  const i64 N = psi.modulus();
  if (std::gcd(c, N) != 1) throw std::invalid_argument("build_G: l c* must be coprime to N");
  GaussSumCache local(chi_star);
  GaussSumCache& g = cache ? *cache : local;
  const cplx pre = chi_star(-N) * psi(q * c) * static_cast<double>(cs);
  const u64 K = static_cast<u64>(l * cs * cs * cs * q);
  FormalSeries out({kUnbounded, window.P_max, window.Q_max}, {K, kUnbounded}, 1);
  if (pre == cplx{0.0, 0.0}) return out;
  for (i64 d : divisors(q * l)) {
    const cplx gd = g(c, d);
    const i64 C2 = q * c / d;
    for (u64 n : indices_for_ratio_over(K, static_cast<u64>(d * d), window)) {
      const i64 ni = static_cast<i64>(n);
      const cplx gn = g(C2, ni);
      if (gn == cplx{0.0, 0.0}) continue;
      const PositiveRational Y = detail::ratio(K, static_cast<u64>(d * d)) * PositiveRational{1, n};
      out.add_term({1, Y}, pre * Ft(d, ni) * gd * gn / (static_cast<double>(d) * static_cast<double>(n)));
    }
  }
  out.prune();
  return out;
}

/// L_q(2w-s, F) L(s, F x chi*) L(2w-2s+1, conj chi*)^{-1}, the first two
/// restricted to indices coprime to N where the definition requires it.
inline FormalSeries build_Z_lhs(const HeckeCoefficientModel& F, i64 q, const DirichletCharacter& chi_star,
                                const Window& w) {
  IdentityCase::validate(F, chi_star, q);
  const i64 N = F.level();
  auto coprime = [N](i64 n) { return std::gcd(n, N) == 1; };
  const DirichletCharacter cb = chi_star.conj();
  const Window xw{w.X_max, kUnbounded, kUnbounded};
  const FormalSeries A = build_lseries([&](i64 n) { return F(q, n); }, 2, -1, 0, coprime, xw);
  const FormalSeries C =
      build_lseries([&](i64 l) { return static_cast<double>(mobius(l)) * cb(l); }, 2, -2, 1, coprime, xw);
  const FormalSeries AC = series_mul(A, C, xw);
  const Window bw = required_window(w, AC.caps());
  const FormalSeries B = build_lseries([&](i64 m) { return F(1, m) * chi_star(m); }, 0, 1, 0, {},
                                       {kUnbounded, bw.P_max, kUnbounded});
  return series_mul(AC, B, w);
}

/// sum_{(d1,N)=1} sum_{d2 | q} sum_{(l,N)=1} psi(d2) chi*(d1 d2)/tau(conj chi*) d1^{-2w} l^{-2w} d2^{-s} H(q d1/d2, l).
inline FormalSeries build_Z_rhs(const HeckeCoefficientModel& F, i64 q, const DirichletCharacter& chi_star,
                                const Window& w) {
  IdentityCase::validate(F, chi_star, q);
  const i64 N = F.level();
  const DirichletCharacter& psi = F.nebentypus();
  const cplx tau_bar = gauss_sum(chi_star.conj());
  GaussSumCache cache(chi_star.conj());
  FormalSeries out(w, {kUnbounded, kUnbounded});
  for (i64 d1 = 1; static_cast<u64>(d1 * d1) <= w.X_max; ++d1) {
    if (std::gcd(d1, N) != 1) continue;
    for (i64 l = 1; static_cast<u64>(d1 * d1 * l * l) <= w.X_max; ++l) {
      if (std::gcd(l, N) != 1) continue;
      for (i64 d2 : divisors(q)) {
        const cplx k = psi(d2) * chi_star(d1 * d2) / tau_bar;
        if (k == cplx{0.0, 0.0}) continue;
        const DirichletMonomial mono{k, {static_cast<u64>(d1 * d1 * l * l), {static_cast<u64>(d2), 1}}};
        const FormalSeries H =
            build_H(q * d1 / d2, l, chi_star, F, detail::component_window(w, mono.key.Y), &cache);
        detail::accumulate(out, series_mul(FormalSeries::monomial(mono), H, w));
      }
    }
  }
  return out;
}

inline double verify_Z_expansion(const HeckeCoefficientModel& F, i64 q, const DirichletCharacter& chi_star,
                                 const Window& w) {
  return compare(build_Z_lhs(F, q, chi_star, w), build_Z_rhs(F, q, chi_star, w), w);
}

/// K sum_{(n,N)=1} sum_{d1 | q} sum_{d0} A_Ft(n d1, q d0/d1) psi(nq) conj chi*(d0 d1)/(d0 d1)
/// at X = n^2, Y = c*^3/(n d0 d1), with K = psi(c*) chi*(N) tau(chi*)^3 and one G_pm symbol.
inline FormalSeries build_fe_lhs(const HeckeCoefficientModel& Ft, const DirichletCharacter& psi, i64 q,
                                 const DirichletCharacter& chi_star, const Window& w) {
  const i64 N = psi.modulus();
  const i64 cs = chi_star.modulus();
  const u64 c3 = static_cast<u64>(cs * cs * cs);
  const cplx tau = gauss_sum(chi_star);
  const cplx K = psi(cs) * chi_star(N) * tau * tau * tau;
  const DirichletCharacter cb = chi_star.conj();
  FormalSeries out(w, {c3, kUnbounded}, 1);
  for (i64 n = 1; static_cast<u64>(n * n) <= w.X_max; ++n) {
    if (std::gcd(n, N) != 1) continue;
    for (i64 d1 : divisors(q)) {
      for (u64 d0 : indices_for_ratio_over(c3, static_cast<u64>(n * d1), w)) {
        const i64 d0i = static_cast<i64>(d0);
        const cplx x = cb(d0i * d1);
        if (x == cplx{0.0, 0.0}) continue;
        const PositiveRational Y = detail::ratio(c3, static_cast<u64>(n * d1)) * PositiveRational{1, d0};
        out.add_term({static_cast<u64>(n * n), Y}, K * Ft(n * d1, q * d0i / d1) * psi(n * q) * x /
                                                       (static_cast<double>(d0) * static_cast<double>(d1)));
      }
    }
  }
  out.prune();
  return out;
}

/// The same outer sums as build_Z_rhs with G in place of H.
inline FormalSeries build_fe_rhs(const HeckeCoefficientModel& Ft, const DirichletCharacter& psi, i64 q,
                                 const DirichletCharacter& chi_star, const Window& w) {
  const i64 N = psi.modulus();
  const cplx tau_bar = gauss_sum(chi_star.conj());
  GaussSumCache cache(chi_star);
  FormalSeries out(w, {kUnbounded, kUnbounded}, 1);
  for (i64 d1 = 1; static_cast<u64>(d1 * d1) <= w.X_max; ++d1) {
    if (std::gcd(d1, N) != 1) continue;
    for (i64 l = 1; static_cast<u64>(d1 * d1 * l * l) <= w.X_max; ++l) {
      if (std::gcd(l, N) != 1) continue;
      for (i64 d2 : divisors(q)) {
        const cplx k = psi(d2) * chi_star(d1 * d2) / tau_bar;
        if (k == cplx{0.0, 0.0}) continue;
        const DirichletMonomial mono{k, {static_cast<u64>(d1 * d1 * l * l), {static_cast<u64>(d2), 1}}};
        const FormalSeries G =
            build_G(q * d1 / d2, l, chi_star, Ft, psi, detail::component_window(w, mono.key.Y), &cache);
        detail::accumulate(out, series_mul(FormalSeries::monomial(mono), G, w));
      }
    }
  }
  return out;
}

/// |chi*(-N) tau(chi*)^2 c*/tau(conj chi*) - chi*(N) tau(chi*)^3|: the two
/// normalizations of the dual side agree through tau(chi) tau(conj chi) = chi(-1) c.
inline double fe_normalization_residual(const DirichletCharacter& chi_star, i64 N) {
  const cplx tau = gauss_sum(chi_star);
  const cplx tau_bar = gauss_sum(chi_star.conj());
  const double cs = static_cast<double>(chi_star.modulus());
  return std::abs(chi_star(-N) * tau * tau * cs / tau_bar - chi_star(N) * tau * tau * tau);
}

struct FeRearrangementResult {
  double series_residual = 0.0;
  double normalization_residual = 0.0;
  int lhs_symbol_degree = 0;
  int rhs_symbol_degree = 0;
};

/// Both sides with G_pm(s) cancelled after checking it enters each to the first power.
inline FeRearrangementResult fe_rearrangement_details(const HeckeCoefficientModel& Ft, const DirichletCharacter& psi,
                                                      i64 q, const DirichletCharacter& chi_star, const Window& w) {
  if (std::gcd(q, psi.modulus()) != 1 || std::gcd(chi_star.modulus(), psi.modulus()) != 1 ||
      !chi_star.is_primitive())
    throw std::invalid_argument("fe rearrangement: coprimality or primitivity hypothesis violated");
  const FormalSeries lhs = build_fe_lhs(Ft, psi, q, chi_star, w);
  const FormalSeries rhs = build_fe_rhs(Ft, psi, q, chi_star, w);
  FeRearrangementResult r;
  r.lhs_symbol_degree = lhs.symbol_degree();
  r.rhs_symbol_degree = rhs.symbol_degree();
  if (r.lhs_symbol_degree != 1 || r.rhs_symbol_degree != 1)
    throw std::logic_error("fe rearrangement: G_pm must occur to the first power on both sides");
  r.series_residual = compare(lhs, rhs, w);
  r.normalization_residual = fe_normalization_residual(chi_star, psi.modulus());
  return r;
}

/// Takes the model F and uses its contragredient on both sides.
inline double verify_fe_rearrangement(const HeckeCoefficientModel& F, i64 q, const DirichletCharacter& chi_star,
                                      const Window& w) {
  IdentityCase::validate(F, chi_star, q);
  const auto r = fe_rearrangement_details(F.contragredient(), F.nebentypus(), q, chi_star, w);
  return std::max(r.series_residual, r.normalization_residual);
}

/// sum_{d2 | q} sum_{d1 l = m} psi(d2) chi*(d1 d2) d2^{-s} K(q d1/d2, l), for K = H or G.
template <class Kernel>
FormalSeries bold_series(i64 q, i64 m, const DirichletCharacter& chi_star, const DirichletCharacter& psi,
                         const Window& w, Kernel&& kernel, int symbol_degree) {
  FormalSeries out(w, {kUnbounded, kUnbounded}, symbol_degree);
  for (i64 d2 : divisors(q)) {
    for (i64 d1 : divisors(m)) {
      const cplx k = psi(d2) * chi_star(d1 * d2);
      if (k == cplx{0.0, 0.0}) continue;
      const DirichletMonomial mono{k, {1, {static_cast<u64>(d2), 1}}};
      const FormalSeries part = kernel(q * d1 / d2, m / d1, detail::component_window(w, mono.key.Y));
      detail::accumulate(out, series_mul(FormalSeries::monomial(mono, 0), part, w));
    }
  }
  return out;
}

/// max of the H and G residuals of
/// K(q,m) = sum_{e0 | m} sum_{e1 | q e0} mu(e0) mu(e1) chi*(e0 e1) psi(e1) e1^{-s} bold K(q e0/e1, m/e0).
inline double verify_moebius_assembly(const HeckeCoefficientModel& F, i64 q, i64 m, const DirichletCharacter& chi_star,
                                      const Window& w) {
  IdentityCase::validate(F, chi_star, q);
  if (m < 1 || std::gcd(m, F.level()) != 1)
    throw std::invalid_argument("verify_moebius_assembly: m must be positive and coprime to N");
  const DirichletCharacter& psi = F.nebentypus();
  const HeckeCoefficientModel Ft = F.contragredient();
  GaussSumCache hcache(chi_star.conj());
  GaussSumCache gcache(chi_star);
  auto H = [&](i64 qq, i64 l, const Window& win) { return build_H(qq, l, chi_star, F, win, &hcache); };
  auto G = [&](i64 qq, i64 l, const Window& win) { return build_G(qq, l, chi_star, Ft, psi, win, &gcache); };
  double worst = 0.0;
  auto check = [&](auto& kernel, int degree) {
    const FormalSeries lhs = kernel(q, m, w);
    FormalSeries rhs(w, {kUnbounded, kUnbounded}, degree);
    for (i64 e0 : divisors(m)) {
      for (i64 e1 : divisors(q * e0)) {
        const cplx k = static_cast<double>(mobius(e0) * mobius(e1)) * chi_star(e0 * e1) * psi(e1);
        if (k == cplx{0.0, 0.0}) continue;
        const DirichletMonomial mono{k, {1, {static_cast<u64>(e1), 1}}};
        const FormalSeries bold =
            bold_series(q * e0 / e1, m / e0, chi_star, psi, detail::component_window(w, mono.key.Y), kernel, degree);
        detail::accumulate(rhs, series_mul(FormalSeries::monomial(mono), bold, w));
      }
    }
    worst = std::max(worst, compare(lhs, rhs, w));
  };
  check(H, 0);
  check(G, 1);
  return worst;
}

/// max over units a mod c and n <= n_max of
/// |sum_{chi mod c} conj(chi)(a) [A(q,n) g(conj chi, c, n)] - phi(c) A(q,n) e(abar n / c)|,
/// with the bracket read off the built series H(q, c/c(chi), chi*).
inline double verify_orthogonality_equivalence(const HeckeCoefficientModel& F, i64 q, i64 c, i64 n_max) {
  const i64 N = F.level();
  if (std::gcd(c, N) != 1 || std::gcd(q, N) != 1)
    throw std::invalid_argument("verify_orthogonality_equivalence: c and q must be coprime to N");
  const auto chars = enumerate_characters(c);
  std::vector<std::vector<cplx>> twisted;  // [chi][n]
  for (const auto& chi : chars) {
    const DirichletCharacter chi_star = primitive_part(chi);
    const i64 l = c / chi_star.modulus();
    const u64 l2 = static_cast<u64>(l * l);
    const FormalSeries H = build_H(q, l, chi_star, F, {kUnbounded, static_cast<u64>(n_max), l2});
    std::vector<cplx> row(static_cast<std::size_t>(n_max) + 1);
    for (i64 n = 1; n <= n_max; ++n)
      row[n] = H.coefficient({1, PositiveRational::make(static_cast<u64>(n), l2)}) * static_cast<double>(l);
    twisted.push_back(std::move(row));
  }
  const double phi = static_cast<double>(euler_phi(c));
  double worst = 0.0;
  for (i64 a = 1; a <= c; ++a) {
    if (std::gcd(a, c) != 1) continue;
    const i64 abar = mod_inverse(a, c);
    for (i64 n = 1; n <= n_max; ++n) {
      cplx lhs{0.0, 0.0};
      for (std::size_t j = 0; j < chars.size(); ++j) lhs += std::conj(chars[j](a)) * twisted[j][n];
      const cplx rhs = phi * F(q, n) * root_of_unity(detail::mulmod(abar, n, c), c);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

}  // namespace gl3
