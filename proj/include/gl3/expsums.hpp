#pragma once

// Kloosterman and Ramanujan sums, and the character averages that collapse
// Kloosterman sums into products of generalized Gauss sums.

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "gl3/arith.hpp"
#include "gl3/characters.hpp"

namespace gl3 {

/// S(a,b;c) for a fixed modulus, with inverse and root tables built once.
class KloostermanEvaluator {
 public:
  explicit KloostermanEvaluator(i64 c) : c_(c) {
    if (c < 1) throw std::invalid_argument("KloostermanEvaluator: modulus must be positive");
    roots_.resize(static_cast<std::size_t>(c));
    for (i64 k = 0; k < c; ++k) roots_[k] = root_of_unity(k, c);
    for (i64 x = 0; x < c; ++x)
      if (std::gcd(x, c) == 1) units_.emplace_back(x, mod_inverse(x, c));
    if (c == 1) units_ = {{0, 0}};
  }

  i64 modulus() const { return c_; }

  cplx operator()(i64 a, i64 b) const {
    const i64 ar = mod(a, c_), br = mod(b, c_);
    cplx sum{0.0, 0.0};
    for (const auto& [x, xi] : units_) sum += roots_[(ar * x + br * xi) % c_];
    return sum;
  }

  /// S(r,b;c) for r = 0..c-1.
  std::vector<cplx> row(i64 b) const {
    std::vector<cplx> out(static_cast<std::size_t>(c_));
    for (i64 r = 0; r < c_; ++r) out[r] = (*this)(r, b);
    return out;
  }

 private:
  i64 c_;
  std::vector<cplx> roots_;
  std::vector<std::pair<i64, i64>> units_;
};

inline cplx kloosterman(i64 a, i64 b, i64 c) { return KloostermanEvaluator(c)(a, b); }

/// Independent route through twisted multiplicativity over the prime-power
/// factorization of c; used only as a cross-check.
inline cplx kloosterman_crt(i64 a, i64 b, i64 c) {
  if (c < 1) throw std::invalid_argument("kloosterman_crt: modulus must be positive");
  cplx prod{1.0, 0.0};
  for (const auto& [p, e] : factorize(c == 1 ? 2 : c)) {
    if (c == 1) break;
    const i64 q = ipow(p, e);
    const i64 rest = c / q;
    const i64 ri = mod_inverse(rest % q, q);
    // Direct sum modulo the prime power with the cofactor twist.
    const i64 aa = detail::mulmod(mod(a, q), ri, q), bb = detail::mulmod(mod(b, q), ri, q);
    cplx s{0.0, 0.0};
    for (i64 x = 1; x < q; ++x) {
      if (x % p == 0) continue;
      const i64 xi = mod_inverse(x, q);
      s += root_of_unity(aa * x + bb * xi, q);
    }
    prod *= s;
  }
  return prod;
}

inline cplx ramanujan_sum(i64 c, i64 m) {
  if (c < 1) throw std::invalid_argument("ramanujan_sum: modulus must be positive");
  cplx sum{0.0, 0.0};
  for (i64 u = 1; u <= c; ++u)
    if (std::gcd(u, c) == 1) sum += root_of_unity(detail::mulmod(u, mod(m, c), c), c);
  return sum;
}

/// |sum_a conj(chi)(a) S(am, m2; c|m|/m1) - [m1 | m] g(conj chi, c, sign(m) m1) g(conj chi, c|m|/m1, m2)|.
/// For m < 0 the relabeling a -> -a moves a factor chi(-1) onto the first
/// Gauss sum, which is the sign carried by sign(m) m1.
inline double char_kloosterman_reduction_residual(const DirichletCharacter& chi, i64 c, i64 m, i64 m1, i64 m2) {
  if (chi.modulus() != c) throw std::invalid_argument("char_kloosterman_reduction_residual: chi must have modulus c");
  if (m == 0) throw std::invalid_argument("char_kloosterman_reduction_residual: m must be nonzero");
  if (m1 < 1 || (c * m) % m1 != 0)
    throw std::invalid_argument("char_kloosterman_reduction_residual: m1 = " + std::to_string(m1) +
                                " does not divide cm = " + std::to_string(c * m));
  const i64 am = m < 0 ? -m : m;
  const i64 C = c * am / m1;
  const DirichletCharacter cb = chi.conj();
  const KloostermanEvaluator S(C);
  cplx lhs{0.0, 0.0};
  for (i64 a = 1; a <= c; ++a)
    if (std::gcd(a, c) == 1) lhs += cb(a) * S(a * m, m2);
  cplx rhs{0.0, 0.0};
  if (am % m1 == 0) rhs = generalized_gauss_sum(cb, c, m < 0 ? -m1 : m1) * generalized_gauss_sum(cb, C, m2);
  return std::abs(lhs - rhs);
}

struct ReductionSweepStats {
  double worst = 0.0;             // over every case
  double worst_primitive = 0.0;   // restricted to primitive chi
  double worst_divisible = 0.0;   // restricted to the m1 | m branch
  long cases = 0;
  long failures = 0;              // cases above the tolerance
  long failures_imprimitive_vanishing = 0;
  std::string first_failure;
};

/// Batched sweep: for each (c, m, m1, m2) the Kloosterman values S(am, m2; C)
/// are shared by all characters mod c, and Gauss-sum tables are shared by all
/// shifts.
inline ReductionSweepStats kloosterman_reduction_sweep(i64 c_max, const std::vector<i64>& m_set, i64 m2_max,
                                                       double tol) {
  ReductionSweepStats st;
  std::map<std::pair<i64, i64>, std::vector<cplx>> rows;  // (C, m2 mod C) -> S(r, m2; C)
  auto row = [&](i64 C, i64 m2) -> const std::vector<cplx>& {
    const auto key = std::make_pair(C, mod(m2, C));
    auto it = rows.find(key);
    if (it == rows.end()) it = rows.emplace(key, KloostermanEvaluator(C).row(m2)).first;
    return it->second;
  };
  for (i64 c = 1; c <= c_max; ++c) {
    const auto chars = enumerate_characters(c);
    std::vector<DirichletCharacter> conj;
    for (const auto& chi : chars) conj.push_back(chi.conj());
    std::vector<i64> units;
    for (i64 a = 1; a <= c; ++a)
      if (std::gcd(a, c) == 1) units.push_back(a);
    std::map<std::pair<std::size_t, i64>, std::vector<cplx>> gtab;
    auto g = [&](std::size_t j, i64 C, i64 n) {
      auto key = std::make_pair(j, C);
      auto it = gtab.find(key);
      if (it == gtab.end()) it = gtab.emplace(key, generalized_gauss_table(conj[j], C)).first;
      return it->second[mod(n, C)];
    };
    for (i64 m : m_set) {
      const i64 am = m < 0 ? -m : m;
      for (i64 m1 : divisors(c * m)) {
        const i64 C = c * am / m1;
        const bool divisible = am % m1 == 0;
        for (i64 m2 = -m2_max; m2 <= m2_max; ++m2) {
          const auto& srow = row(C, m2);
          std::vector<cplx> svals;
          for (i64 a : units) svals.push_back(srow[mod(a * m, C)]);
          for (std::size_t j = 0; j < chars.size(); ++j) {
            cplx lhs{0.0, 0.0};
            for (std::size_t k = 0; k < units.size(); ++k) lhs += conj[j](units[k]) * svals[k];
            const cplx rhs = divisible ? g(j, c, m < 0 ? -m1 : m1) * g(j, C, m2) : cplx{0.0, 0.0};
            const double r = std::abs(lhs - rhs);
            const bool prim = chars[j].is_primitive();
            ++st.cases;
            st.worst = std::max(st.worst, r);
            if (prim) st.worst_primitive = std::max(st.worst_primitive, r);
            if (divisible) st.worst_divisible = std::max(st.worst_divisible, r);
            if (r > tol) {
              ++st.failures;
              if (!prim && !divisible) ++st.failures_imprimitive_vanishing;
              if (st.first_failure.empty())
                st.first_failure = "c=" + std::to_string(c) + " conductor=" + std::to_string(chars[j].conductor()) +
                                   " m=" + std::to_string(m) + " m1=" + std::to_string(m1) +
                                   " m2=" + std::to_string(m2) + " residual=" + std::to_string(r);
            }
          }
        }
      }
    }
  }
  return st;
}

/// |sum_a conj(psi chi)(a) e(-n abar/c) - (-1)^kappa tau(psi chi) conj(psi chi)(n)|
/// with c the modulus of chi and kappa = 0 exactly when psi chi is even.
inline double additive_collapse_residual(const DirichletCharacter& psi, const DirichletCharacter& chi, i64 n) {
  const i64 c = chi.modulus();
  if (c % psi.modulus() != 0)
    throw std::invalid_argument("additive_collapse_residual: level " + std::to_string(psi.modulus()) +
                                " does not divide " + std::to_string(c));
  const DirichletCharacter pc = multiply(psi, chi);
  if (!pc.is_primitive())
    throw std::invalid_argument("additive_collapse_residual: psi*chi is not primitive mod " + std::to_string(c));
  cplx lhs{0.0, 0.0};
  for (i64 a = 1; a <= c; ++a) {
    if (std::gcd(a, c) != 1) continue;
    lhs += root_of_unity(-*pc.phase(a) + Phase::make(-detail::mulmod(mod(n, c), mod_inverse(a, c), c), c));
  }
  const double sign = pc.parity() == 1 ? 1.0 : -1.0;
  const cplx rhs = sign * gauss_sum(pc) * std::conj(pc(n));
  return std::abs(lhs - rhs);
}

struct CollapseSweepStats {
  double worst = 0.0;
  long pairs = 0;
  long cases = 0;
};

/// Every N | c, every psi mod N, every chi mod c with psi chi primitive, every n mod c.
inline CollapseSweepStats additive_collapse_sweep(i64 c_max) {
  CollapseSweepStats st;
  for (i64 c = 1; c <= c_max; ++c) {
    const auto chis = enumerate_characters(c);
    for (i64 N : divisors(c)) {
      for (const auto& psi : enumerate_characters(N)) {
        for (const auto& chi : chis) {
          if (!multiply(psi, chi).is_primitive()) continue;
          ++st.pairs;
          for (i64 n = 0; n < c; ++n) {
            st.worst = std::max(st.worst, additive_collapse_residual(psi, chi, n));
            ++st.cases;
          }
        }
      }
    }
  }
  return st;
}

}  // namespace gl3
