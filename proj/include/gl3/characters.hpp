#pragma once

// Dirichlet characters stored by their exponents against the canonical
// generators of (Z/qZ)^x. Values are assembled from an exact rational phase
// (a reduced fraction of a full turn) and only then turned into a complex
// number, so every character value carries O(1) rounding error.

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numeric>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gl3/arith.hpp"

namespace gl3 {

using cplx = std::complex<double>;

/// A point num/den of the circle R/Z, reduced, with 0 <= num < den.
struct Phase {
  i64 num = 0;
  i64 den = 1;

  static Phase make(i64 num, i64 den) {
    num = mod(num, den);
    const i64 g = std::gcd(num, den);
    return g == 0 ? Phase{0, 1} : Phase{num / g, den / g};
  }

  friend Phase operator+(const Phase& a, const Phase& b) {
    const i64 den = lcm(a.den, b.den);
    return make(a.num * (den / a.den) + b.num * (den / b.den), den);
  }
  friend Phase operator-(const Phase& a) { return make(-a.num, a.den); }
  friend bool operator==(const Phase&, const Phase&) = default;
};

/// e(num/den) = exp(2 pi i num/den), exact at multiples of a quarter turn.
inline cplx root_of_unity(i64 num, i64 den) {
  const Phase p = Phase::make(num, den);
  if (p.num == 0) return {1.0, 0.0};
  if (p.den == 2) return {-1.0, 0.0};
  if (p.den == 4) return p.num == 1 ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
  // Fold into [-1/2, 1/2) before the transcendental call.
  const double x = 2.0 * static_cast<double>(2 * p.num > p.den ? p.num - p.den : p.num) / static_cast<double>(p.den);
  return {std::cos(std::numbers::pi * x), std::sin(std::numbers::pi * x)};
}

inline cplx root_of_unity(const Phase& p) { return root_of_unity(p.num, p.den); }

/// The unit group of Z/qZ with a discrete-log table against its generators.
class DirichletGroup {
 public:
  static std::shared_ptr<const DirichletGroup> make(i64 q) {
    return std::shared_ptr<const DirichletGroup>(new DirichletGroup(q));
  }

  i64 modulus() const { return q_; }
  const std::vector<UnitGenerator>& generators() const { return gens_; }
  i64 order() const { return phi_; }

  /// Exponents of the unit n against the generators.
  const int* dlog(i64 n) const {
    return dlog_.data() + static_cast<std::size_t>(unit_index_[mod(n, q_)]) * gens_.size();
  }
  bool is_unit(i64 n) const { return unit_index_[mod(n, q_)] >= 0; }

 private:
  explicit DirichletGroup(i64 q) : q_(q), gens_(unit_group_generators(q)), phi_(euler_phi(q)) {
    unit_index_.assign(static_cast<std::size_t>(q_), -1);
    dlog_.reserve(static_cast<std::size_t>(phi_) * gens_.size());
    // Walk all exponent tuples in mixed radix.
    std::vector<int> digits(gens_.size(), 0);
    for (i64 idx = 0; idx < phi_; ++idx) {
      i64 x = mod(1, q_);
      for (std::size_t j = 0; j < gens_.size(); ++j)
        x = detail::mulmod(x, powmod(gens_[j].generator, digits[j], q_), q_);
      unit_index_[x] = static_cast<int>(idx);
      dlog_.insert(dlog_.end(), digits.begin(), digits.end());
      for (std::size_t j = 0; j < gens_.size(); ++j) {
        if (++digits[j] < gens_[j].order) break;
        digits[j] = 0;
      }
    }
    if (q_ == 1) unit_index_[0] = 0;
  }

  i64 q_;
  std::vector<UnitGenerator> gens_;
  i64 phi_;
  std::vector<int> unit_index_;
  std::vector<int> dlog_;
};

class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const DirichletGroup> group, std::vector<i64> exponents)
      : group_(std::move(group)), exponents_(std::move(exponents)), table_(std::make_shared<LazyTable>()) {
    const auto& gens = group_->generators();
    if (exponents_.size() != gens.size())
      throw std::invalid_argument("DirichletCharacter: expected " + std::to_string(gens.size()) +
                                  " exponents for modulus " + std::to_string(group_->modulus()));
    for (std::size_t j = 0; j < gens.size(); ++j) exponents_[j] = mod(exponents_[j], gens[j].order);
    conductor_ = scan_conductor();
  }

  i64 modulus() const { return group_->modulus(); }
  const std::vector<i64>& exponents() const { return exponents_; }
  const std::shared_ptr<const DirichletGroup>& group() const { return group_; }
  i64 conductor() const { return conductor_; }
  bool is_primitive() const { return conductor_ == modulus(); }
  bool is_principal() const {
    return std::all_of(exponents_.begin(), exponents_.end(), [](i64 e) { return e == 0; });
  }
  /// chi(-1) as +1 or -1.
  int parity() const { return phase(-1)->num == 0 ? 1 : -1; }

  /// Exact phase of chi(n); empty when gcd(n, q) > 1.
  std::optional<Phase> phase(i64 n) const {
    if (!group_->is_unit(n)) return std::nullopt;
    const int* d = group_->dlog(n);
    const auto& gens = group_->generators();
    Phase p;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (exponents_[j] != 0 && d[j] != 0) p = p + Phase::make(exponents_[j] * d[j], gens[j].order);
    return p;
  }

  cplx operator()(i64 n) const {
    const auto p = phase(n);
    return p ? root_of_unity(*p) : cplx{0.0, 0.0};
  }

  /// Values at 0..q-1, materialized once and shared by copies.
  const std::vector<cplx>& values() const {
    std::call_once(table_->once, [this] {
      table_->values.resize(static_cast<std::size_t>(modulus()));
      for (i64 n = 0; n < modulus(); ++n) table_->values[n] = (*this)(n);
    });
    return table_->values;
  }

  DirichletCharacter conj() const {
    std::vector<i64> neg(exponents_.size());
    for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -exponents_[j];
    return DirichletCharacter(group_, std::move(neg));
  }

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus() == b.modulus() && a.exponents_ == b.exponents_;
  }

 private:
  struct LazyTable {
    std::once_flag once;
    std::vector<cplx> values;
  };

  // Smallest d | q with chi(a) = 1 for every unit a = 1 mod d.
  i64 scan_conductor() const {
    const i64 q = modulus();
    for (i64 d : divisors(q)) {
      bool trivial = true;
      for (i64 a = 1 % d; a < q && trivial; a += d) {
        if (!group_->is_unit(a)) continue;
        if (phase(a)->num != 0) trivial = false;
      }
      if (q == 1 || trivial) return d;
    }
    return q;
  }

  std::shared_ptr<const DirichletGroup> group_;
  std::vector<i64> exponents_;
  i64 conductor_ = 1;
  std::shared_ptr<LazyTable> table_;
};

inline DirichletCharacter principal_character(i64 q) {
  auto group = DirichletGroup::make(q);
  std::vector<i64> zeros(group->generators().size(), 0);
  return DirichletCharacter(std::move(group), std::move(zeros));
}

/// All phi(q) characters mod q; the principal character comes first.
inline std::vector<DirichletCharacter> enumerate_characters(i64 q, bool primitive_only = false) {
  if (q < 1) throw std::invalid_argument("enumerate_characters: q must be positive");
  auto group = DirichletGroup::make(q);
  const auto& gens = group->generators();
  std::vector<DirichletCharacter> out;
  std::vector<i64> digits(gens.size(), 0);
  for (i64 idx = 0; idx < group->order(); ++idx) {
    DirichletCharacter chi(group, digits);
    if (!primitive_only || chi.is_primitive()) out.push_back(std::move(chi));
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (++digits[j] < gens[j].order) break;
      digits[j] = 0;
    }
  }
  return out;
}

/// The character mod target whose values on units agree with `phase_of`.
/// `phase_of(g)` must return the exact phase at each generator of the target
/// group, with denominator dividing that generator's order.
template <class PhaseFn>
DirichletCharacter character_from_generator_phases(i64 target, PhaseFn&& phase_of) {
  auto group = DirichletGroup::make(target);
  std::vector<i64> exps;
  for (const auto& [g, order] : group->generators()) {
    const Phase p = phase_of(g);
    if (order % p.den != 0) throw std::logic_error("character_from_generator_phases: phase order mismatch");
    exps.push_back(p.num * (order / p.den));
  }
  return DirichletCharacter(std::move(group), std::move(exps));
}

/// Lift chi to a modulus Q that is a multiple of its own.
inline DirichletCharacter induce(const DirichletCharacter& chi, i64 Q) {
  if (Q % chi.modulus() != 0)
    throw std::invalid_argument("induce: target " + std::to_string(Q) + " is not a multiple of " +
                                std::to_string(chi.modulus()));
  return character_from_generator_phases(Q, [&](i64 g) { return *chi.phase(g); });
}

/// Pointwise product, as a character mod lcm(q1, q2).
inline DirichletCharacter multiply(const DirichletCharacter& a, const DirichletCharacter& b) {
  const i64 L = lcm(a.modulus(), b.modulus());
  return character_from_generator_phases(L, [&](i64 g) { return *a.phase(g) + *b.phase(g); });
}

/// The primitive character mod conductor(chi) inducing chi.
inline DirichletCharacter primitive_part(const DirichletCharacter& chi) {
  const i64 d = chi.conductor();
  const i64 q = chi.modulus();
  return character_from_generator_phases(d, [&](i64 g) {
    // Any lift of g mod d that is a unit mod q carries the same value.
    for (i64 n = g; n < g + d * q + 1; n += d)
      if (chi.group()->is_unit(n)) return *chi.phase(n);
    throw std::logic_error("primitive_part: no unit lift found");
  });
}

/// tau(chi) = sum_{u mod q} chi(u) e(u/q), one transcendental call per term.
inline cplx gauss_sum(const DirichletCharacter& chi) {
  const i64 q = chi.modulus();
  cplx sum{0.0, 0.0};
  for (i64 u = 0; u < q; ++u) {
    const auto p = chi.phase(u);
    if (p) sum += root_of_unity(*p + Phase::make(u, q));
  }
  return sum;
}

/// g(chi, c, m) = sum over units u mod c of e(um/c) chi(u); chi's modulus
/// must divide c. Negative m is reduced mod c.
inline cplx generalized_gauss_sum(const DirichletCharacter& chi, i64 c, i64 m) {
  if (c < 1 || c % chi.modulus() != 0)
    throw std::invalid_argument("generalized_gauss_sum: character modulus " + std::to_string(chi.modulus()) +
                                " does not divide " + std::to_string(c));
  const i64 shift = mod(m, c);
  cplx sum{0.0, 0.0};
  for (i64 u = 1; u <= c; ++u) {
    if (std::gcd(u, c) != 1) continue;
    sum += root_of_unity(*chi.phase(u) + Phase::make(detail::mulmod(u, shift, c), c));
  }
  return sum;
}

/// g(chi, c, n) for n = 0..c-1 at O(c phi(c)) cost; used by hot loops.
inline std::vector<cplx> generalized_gauss_table(const DirichletCharacter& chi, i64 c) {
  if (c < 1 || c % chi.modulus() != 0)
    throw std::invalid_argument("generalized_gauss_table: character modulus does not divide " + std::to_string(c));
  std::vector<cplx> roots(static_cast<std::size_t>(c));
  for (i64 k = 0; k < c; ++k) roots[k] = root_of_unity(k, c);
  std::vector<std::pair<i64, cplx>> units;
  for (i64 u = 1; u <= c; ++u)
    if (std::gcd(u, c) == 1) units.emplace_back(u % c, chi(u));
  std::vector<cplx> out(static_cast<std::size_t>(c));
  for (i64 n = 0; n < c; ++n) {
    cplx sum{0.0, 0.0};
    for (const auto& [u, v] : units) sum += v * roots[(u * n) % c];
    out[n] = sum;
  }
  return out;
}

/// g(chi, C, n) for one modulus C and arbitrary n. Writing n = g0 n* mod C
/// with g0 = gcd(n, C) and n* a unit mod C gives g(chi,C,n) = conj(chi)(n*) g(chi,C,g0),
/// so only the divisor values are summed directly.
class GaussSumTable {
 public:
  GaussSumTable(const DirichletCharacter& chi, i64 C) : chi_(chi), C_(C) {
    if (C < 1 || C % chi.modulus() != 0)
      throw std::invalid_argument("GaussSumTable: character modulus " + std::to_string(chi.modulus()) +
                                  " does not divide " + std::to_string(C));
    by_gcd_.assign(static_cast<std::size_t>(C) + 1, cplx{0.0, 0.0});
    std::vector<cplx> roots(static_cast<std::size_t>(C));
    for (i64 k = 0; k < C; ++k) roots[k] = root_of_unity(k, C);
    std::vector<std::pair<i64, cplx>> units;
    for (i64 u = 1; u <= C; ++u)
      if (std::gcd(u, C) == 1) units.emplace_back(u % C, chi(u));
    for (i64 g0 : divisors(C)) {
      cplx sum{0.0, 0.0};
      for (const auto& [u, v] : units) sum += v * roots[(u * g0) % C];
      by_gcd_[g0] = sum;
    }
  }

  i64 modulus() const { return C_; }

  cplx operator()(i64 n) const {
    const i64 r = mod(n, C_);
    const i64 g0 = std::gcd(r, C_);
    const i64 step = C_ / g0;
    i64 lift = r / g0;
    while (std::gcd(lift, C_) != 1) lift += step;
    return std::conj(chi_(lift)) * by_gcd_[g0];
  }

 private:
  DirichletCharacter chi_;
  i64 C_;
  std::vector<cplx> by_gcd_;
};

}  // namespace gl3
