#pragma once

// GL(3) Fourier-Whittaker coefficient families with nebentypus, built from
// Satake triples at unramified primes and free parameters at ramified ones,
// plus brute-force verifiers for the coefficient-level relations.

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gl3/arith.hpp"
#include "gl3/characters.hpp"

namespace gl3 {

struct SatakeTriple {
  cplx alpha, beta, gamma;
};

/// s_(a,b,0)(alpha,beta,gamma) by Jacobi-Trudi, a >= b >= 0.
inline cplx schur_two_row(int a, int b, const SatakeTriple& t) {
  if (a < b || b < 0) throw std::invalid_argument("schur_two_row: need a >= b >= 0");
  const cplx e1 = t.alpha + t.beta + t.gamma;
  const cplx e2 = t.alpha * t.beta + t.beta * t.gamma + t.gamma * t.alpha;
  const cplx e3 = t.alpha * t.beta * t.gamma;
  std::vector<cplx> h(static_cast<std::size_t>(a) + 2, cplx{0.0, 0.0});
  h[0] = 1.0;
  for (int k = 1; k <= a + 1; ++k) {
    h[k] = e1 * h[k - 1];
    if (k >= 2) h[k] -= e2 * h[k - 2];
    if (k >= 3) h[k] += e3 * h[k - 3];
  }
  return b == 0 ? h[a] : h[a] * h[b] - h[a + 1] * h[b - 1];
}

struct ModelOptions {
  bool unitary = true;        // |alpha| = |beta| = 1
  bool zero_ramified = false; // c_{p,k} = 0 for k >= 1
};

class HeckeCoefficientModel {
 public:
  static HeckeCoefficientModel make(const DirichletCharacter& psi, std::uint64_t seed, ModelOptions opts = {}) {
    return HeckeCoefficientModel(psi, seed, opts);
  }

  i64 level() const { return psi_.modulus(); }
  const DirichletCharacter& nebentypus() const { return psi_; }
  std::uint64_t seed() const { return seed_; }
  const ModelOptions& options() const { return opts_; }

  SatakeTriple satake(i64 p) const {
    if (level() % p == 0) throw std::domain_error("satake: prime " + std::to_string(p) + " divides the level");
    {
      std::shared_lock lock(cache_->mutex);
      auto it = cache_->triples.find(p);
      if (it != cache_->triples.end()) return it->second;
    }
    SatakeTriple t;
    if (parent_) {
      const SatakeTriple u = parent_->satake(p);
      t = {1.0 / u.alpha, 1.0 / u.beta, 1.0 / u.gamma};
    } else {
      auto rng = stream(static_cast<std::uint64_t>(p), 0x5a7a);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      auto draw = [&] {
        const double r = opts_.unitary ? 1.0 : std::exp(unit(rng) - 0.5);
        return std::polar(r, 2.0 * std::numbers::pi * unit(rng));
      };
      t.alpha = draw();
      t.beta = draw();
      t.gamma = psi_(p) / (t.alpha * t.beta);
    }
    std::unique_lock lock(cache_->mutex);
    return cache_->triples.emplace(p, t).first->second;
  }

  /// c_{p,k} = A(1, p^k) for p | N.
  cplx ramified(i64 p, int k) const {
    if (k == 0) return 1.0;
    if (opts_.zero_ramified) return 0.0;
    const i64 key = p << 8 | k;
    {
      std::shared_lock lock(cache_->mutex);
      auto it = cache_->ramified.find(key);
      if (it != cache_->ramified.end()) return std::pow(twist_, k) * it->second;
    }
    auto rng = stream(static_cast<std::uint64_t>(p) << 8 | static_cast<std::uint64_t>(k), 0x7a3d);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = std::sqrt(unit(rng));
    const double theta = unit(rng);
    const cplx v = std::polar(r, 2.0 * std::numbers::pi * theta);
    std::unique_lock lock(cache_->mutex);
    cache_->ramified.emplace(key, v);
    return std::pow(twist_, k) * v;
  }

  /// A(m1, m2); negative indices follow A(+-m1, (-1)^k m2) = psi(-1)^k A(m1, m2).
  cplx coefficient(i64 m1, i64 m2) const {
    if (m1 == 0 || m2 == 0) throw std::invalid_argument("coefficient: indices must be nonzero");
    const i64 a1 = m1 < 0 ? -m1 : m1, a2 = m2 < 0 ? -m2 : m2;
    if (std::gcd(a1, level()) != 1)
      throw std::domain_error("coefficient: first index " + std::to_string(m1) + " is not coprime to the level " +
                              std::to_string(level()));
    cplx v = positive(a1, a2);
    if (m2 < 0) v *= static_cast<double>(psi_.parity());
    return v;
  }
  cplx operator()(i64 m1, i64 m2) const { return coefficient(m1, m2); }

  /// Inverted Satake triples, conjugate nebentypus, independent ramified data.
  HeckeCoefficientModel contragredient() const {
    HeckeCoefficientModel out(psi_.conj(), seed_ ^ 0x9e3779b97f4a7c15ULL, opts_);
    out.parent_ = std::make_shared<HeckeCoefficientModel>(*this);
    return out;
  }

  /// Copy whose coefficient at (m1, m2) (both positive) is shifted by delta.
  HeckeCoefficientModel with_perturbation(i64 m1, i64 m2, cplx delta) const {
    HeckeCoefficientModel out = *this;
    out.perturb_[{m1, m2}] += delta;
    return out;
  }

  /// Copy with c_{p,k} replaced by lambda^k c_{p,k}.
  HeckeCoefficientModel with_ramified_twist(cplx lambda) const {
    HeckeCoefficientModel out = *this;
    out.twist_ *= lambda;
    return out;
  }

 private:
  struct Cache {
    std::shared_mutex mutex;
    std::unordered_map<i64, SatakeTriple> triples;
    std::unordered_map<i64, cplx> ramified;
  };

  HeckeCoefficientModel(const DirichletCharacter& psi, std::uint64_t seed, ModelOptions opts)
      : psi_(psi), seed_(seed), opts_(opts), cache_(std::make_shared<Cache>()) {}

  std::mt19937_64 stream(std::uint64_t key, std::uint64_t tag) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                      static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                      static_cast<std::uint32_t>(tag)};
    return std::mt19937_64(seq);
  }

  cplx positive(i64 m1, i64 m2) const {
    cplx v{1.0, 0.0};
    std::map<i64, std::pair<int, int>> exps;
    for (const auto& [p, e] : factorize(m1)) exps[p].first = e;
    for (const auto& [p, e] : factorize(m2)) exps[p].second = e;
    for (const auto& [p, k] : exps) {
      if (level() % p == 0)
        v *= ramified(p, k.second);
      else
        v *= schur_two_row(k.first + k.second, k.first, satake(p));
    }
    if (!perturb_.empty()) {
      auto it = perturb_.find({m1, m2});
      if (it != perturb_.end()) v += it->second;
    }
    return v;
  }

  DirichletCharacter psi_;
  std::uint64_t seed_;
  ModelOptions opts_;
  std::shared_ptr<Cache> cache_;
  std::shared_ptr<const HeckeCoefficientModel> parent_;
  std::map<std::pair<i64, i64>, cplx> perturb_;
  cplx twist_{1.0, 0.0};
};

/// |A(n,1) A(n2,n1) - sum_{abc=n, a|n1, b|n2} psi(ab) A(c n2/b, b n1/a)|.
inline double hecke_relation_residual_1(const HeckeCoefficientModel& F, i64 n, i64 n1, i64 n2) {
  const DirichletCharacter& psi = F.nebentypus();
  const cplx lhs = F(n, 1) * F(n2, n1);
  cplx rhs{0.0, 0.0};
  for (i64 a : divisors(n)) {
    if (n1 % a != 0) continue;
    for (i64 b : divisors(n / a)) {
      if (n2 % b != 0) continue;
      const i64 c = n / a / b;
      rhs += psi(a * b) * F(c * n2 / b, b * n1 / a);
    }
  }
  return std::abs(lhs - rhs);
}

/// |A(1,m) A(n2,n1) - sum_{abc=m, b|n1, c|n2} psi(c) A(b n2/c, a n1/b)|.
inline double hecke_relation_residual_2(const HeckeCoefficientModel& F, i64 m, i64 n1, i64 n2) {
  const DirichletCharacter& psi = F.nebentypus();
  const cplx lhs = F(1, m) * F(n2, n1);
  cplx rhs{0.0, 0.0};
  for (i64 a : divisors(m)) {
    for (i64 b : divisors(m / a)) {
      if (n1 % b != 0) continue;
      const i64 c = m / a / b;
      if (n2 % c != 0) continue;
      const cplx w = psi(c);
      if (w == cplx{0.0, 0.0}) continue;
      rhs += w * F(b * n2 / c, a * n1 / b);
    }
  }
  return std::abs(lhs - rhs);
}

/// |A(n,1) - psi(n) conj A(1,n)|; meaningful for unitary draws only.
inline double adjoint_relation_residual(const HeckeCoefficientModel& F, i64 n) {
  return std::abs(F(n, 1) - F.nebentypus()(n) * std::conj(F(1, n)));
}

/// |A_F(m,n) - psi(m) psi(n) A_Ft(n,m)| for gcd(mn, N) = 1.
inline double contragredient_relation_residual(const HeckeCoefficientModel& F, const HeckeCoefficientModel& Ft,
                                               i64 m, i64 n) {
  const DirichletCharacter& psi = F.nebentypus();
  return std::abs(F(m, n) - psi(m) * psi(n) * Ft(n, m));
}

enum class EulerFactorForm {
  printed,       // 1 - A(1,p)chi(p)X + A(p,1)chi(p)^2 X^2 - chi(p)^3 psi(p) X^3
  psi_inserted,  // quadratic term additionally multiplied by psi(p)
};

/// Coefficients b_n, n <= n_max, of the Euler product over p not dividing N.
inline std::vector<cplx> euler_product_coefficients(const HeckeCoefficientModel& F, const DirichletCharacter& chi,
                                                    i64 n_max, EulerFactorForm form) {
  const DirichletCharacter& psi = F.nebentypus();
  std::vector<cplx> b(static_cast<std::size_t>(n_max) + 1, cplx{0.0, 0.0});
  if (n_max >= 1) b[1] = 1.0;
  for (i64 p : primes_up_to(n_max)) {
    if (F.level() % p == 0) continue;
    const cplx x = chi(p);
    const cplx c1 = F(1, p) * x;
    cplx c2 = F(p, 1) * x * x;
    if (form == EulerFactorForm::psi_inserted) c2 *= psi(p);
    const cplx c3 = x * x * x * psi(p);
    // Local series h_k of the inverted cubic.
    std::vector<cplx> h{1.0};
    for (i64 pk = p; pk <= n_max; pk *= p) {
      const std::size_t k = h.size();
      cplx v = c1 * h[k - 1];
      if (k >= 2) v -= c2 * h[k - 2];
      if (k >= 3) v += c3 * h[k - 3];
      h.push_back(v);
      if (pk > n_max / p) break;
    }
    // Multiply in: existing b is supported on p-free n.
    for (i64 n = n_max; n >= 1; --n) {
      if (n % p == 0 || b[n] == cplx{0.0, 0.0}) continue;
      i64 pk = p;
      for (std::size_t k = 1; k < h.size() && n <= n_max / pk; ++k, pk *= p) {
        b[n * pk] = b[n] * h[k];
        if (pk > n_max / p) break;
      }
    }
  }
  return b;
}

/// max_{n <= n_max} |a_n - b_n| n^{-Re s}, a_n = A(1,n) chi(n) on (n,N)=1.
inline double euler_product_residual(const HeckeCoefficientModel& F, const DirichletCharacter& chi, cplx s,
                                     i64 n_max, EulerFactorForm form = EulerFactorForm::printed) {
  const auto b = euler_product_coefficients(F, chi, n_max, form);
  double worst = 0.0;
  for (i64 n = 1; n <= n_max; ++n) {
    const cplx a = std::gcd(n, F.level()) == 1 ? F(1, n) * chi(n) : cplx{0.0, 0.0};
    worst = std::max(worst, std::abs(a - b[n]) * std::pow(static_cast<double>(n), -s.real()));
  }
  return worst;
}

}  // namespace gl3
