#pragma once

// Sparse formal double Dirichlet series sum coeff * X^{-w} * Y^{-s}, keyed by
// an integer X and a reduced positive rational Y. A series records the window
// on which it is complete (holds every term of the infinite object it stands
// for), and multiplication refuses to produce terms it cannot fully accumulate.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "gl3/arith.hpp"

namespace gl3 {

using cplx = std::complex<double>;

inline constexpr u64 kUnbounded = std::numeric_limits<u64>::max();

/// a*b, saturating at kUnbounded.
inline u64 sat_mul(u64 a, u64 b) {
  if (a == kUnbounded || b == kUnbounded) return kUnbounded;
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) return kUnbounded;
  return r;
}

inline u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("formal: key overflow");
  return r;
}

struct PositiveRational {
  u64 num = 1;
  u64 den = 1;

  static PositiveRational make(u64 num, u64 den) {
    if (num == 0 || den == 0) throw std::invalid_argument("PositiveRational: zero numerator or denominator");
    const u64 g = std::gcd(num, den);
    return {num / g, den / g};
  }
  friend PositiveRational operator*(const PositiveRational& a, const PositiveRational& b) {
    const u64 g1 = std::gcd(a.num, b.den), g2 = std::gcd(b.num, a.den);
    return {checked_mul(a.num / g1, b.num / g2), checked_mul(a.den / g2, b.den / g1)};
  }
  friend auto operator<=>(const PositiveRational&, const PositiveRational&) = default;
};

struct MonomialKey {
  u64 X = 1;
  PositiveRational Y;
  friend auto operator<=>(const MonomialKey&, const MonomialKey&) = default;
};

struct DirichletMonomial {
  cplx coeff{1.0, 0.0};
  MonomialKey key;
};

inline DirichletMonomial mono_mul(const DirichletMonomial& a, const DirichletMonomial& b) {
  return {a.coeff * b.coeff, {checked_mul(a.key.X, b.key.X), a.key.Y * b.key.Y}};
}

struct Window {
  u64 X_max = kUnbounded;
  u64 P_max = kUnbounded;
  u64 Q_max = kUnbounded;

  bool contains(const MonomialKey& k) const { return k.X <= X_max && k.Y.num <= P_max && k.Y.den <= Q_max; }
  /// Every key inside `inner` is inside this window.
  bool covers(const Window& inner) const {
    return inner.X_max <= X_max && inner.P_max <= P_max && inner.Q_max <= Q_max;
  }
  friend bool operator==(const Window&, const Window&) = default;
};

inline std::string to_string(const Window& w) {
  auto f = [](u64 v) { return v == kUnbounded ? std::string("inf") : std::to_string(v); };
  return f(w.X_max) + ":" + f(w.P_max) + ":" + f(w.Q_max);
}

/// Bounds on the numerator and denominator of Y over every support term with
/// X inside the completeness window.
struct SupportCaps {
  u64 num_cap = kUnbounded;
  u64 den_cap = kUnbounded;
};

class CompletenessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class FormalSeries {
 public:
  FormalSeries() = default;
  FormalSeries(Window complete_on, SupportCaps caps, int symbol_degree = 0)
      : window_(complete_on), caps_(caps), degree_(symbol_degree) {}

  /// The single monomial, complete everywhere.
  static FormalSeries monomial(const DirichletMonomial& m, int symbol_degree = 0) {
    FormalSeries s(Window{}, SupportCaps{m.key.Y.num, m.key.Y.den}, symbol_degree);
    s.add_term(m.key, m.coeff);
    return s;
  }
  static FormalSeries unit() { return monomial({}); }

  const Window& window() const { return window_; }
  const SupportCaps& caps() const { return caps_; }
  int symbol_degree() const { return degree_; }
  const std::map<MonomialKey, cplx>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  cplx coefficient(const MonomialKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? cplx{0.0, 0.0} : it->second;
  }

  /// Adds a term; keys outside the completeness window are dropped.
  void add_term(const MonomialKey& k, cplx c) {
    if (window_.contains(k)) terms_[k] += c;
  }

  /// Removes coefficients below the threshold (0 keeps everything).
  void prune(double threshold = 1e-15) {
    if (threshold <= 0.0) return;
    std::erase_if(terms_, [&](const auto& kv) { return std::abs(kv.second) < threshold; });
  }

  /// Replaces the caps with the maxima actually present; valid only when the
  /// series is complete in both Y directions.
  void tighten_caps() {
    if (window_.P_max != kUnbounded || window_.Q_max != kUnbounded) return;
    SupportCaps c{1, 1};
    for (const auto& [k, v] : terms_) {
      c.num_cap = std::max(c.num_cap, k.Y.num);
      c.den_cap = std::max(c.den_cap, k.Y.den);
    }
    caps_ = c;
  }

  void set_symbol_degree(int d) { degree_ = d; }

 private:
  Window window_{};
  SupportCaps caps_{1, 1};
  int degree_ = 0;
  std::map<MonomialKey, cplx> terms_;
};

/// The window a factor must be complete on so that every product term inside
/// w is fully accumulated, given the partner's support caps.
inline Window required_window(const Window& w, const SupportCaps& partner) {
  return {w.X_max, sat_mul(w.P_max, partner.den_cap), sat_mul(w.Q_max, partner.num_cap)};
}

inline FormalSeries series_mul(const FormalSeries& A, const FormalSeries& B, const Window& w,
                               double prune_threshold = 1e-15) {
  const Window need_a = required_window(w, B.caps());
  const Window need_b = required_window(w, A.caps());
  if (!A.window().covers(need_a))
    throw CompletenessError("series_mul: left factor complete on " + to_string(A.window()) + " but product window " +
                            to_string(w) + " needs " + to_string(need_a));
  if (!B.window().covers(need_b))
    throw CompletenessError("series_mul: right factor complete on " + to_string(B.window()) +
                            " but product window " + to_string(w) + " needs " + to_string(need_b));
  FormalSeries out(w, {sat_mul(A.caps().num_cap, B.caps().num_cap), sat_mul(A.caps().den_cap, B.caps().den_cap)},
                   A.symbol_degree() + B.symbol_degree());
  // Terms are ordered by X first, so the inner loop stops once X overflows the window.
  for (const auto& [ka, ca] : A.terms()) {
    if (ka.X > w.X_max) break;
    for (const auto& [kb, cb] : B.terms()) {
      const u64 X = sat_mul(ka.X, kb.X);
      if (X > w.X_max) break;
      const PositiveRational Y = ka.Y * kb.Y;
      if (Y.num <= w.P_max && Y.den <= w.Q_max) out.add_term({X, Y}, ca * cb);
    }
  }
  out.prune(prune_threshold);
  out.tighten_caps();
  return out;
}

/// Sum of series sharing the same symbol degree; complete on the common window.
inline FormalSeries series_add(const FormalSeries& A, const FormalSeries& B) {
  if (A.symbol_degree() != B.symbol_degree())
    throw std::logic_error("series_add: symbol degrees " + std::to_string(A.symbol_degree()) + " and " +
                           std::to_string(B.symbol_degree()) + " differ");
  const Window w{std::min(A.window().X_max, B.window().X_max), std::min(A.window().P_max, B.window().P_max),
                 std::min(A.window().Q_max, B.window().Q_max)};
  FormalSeries out(w, {std::max(A.caps().num_cap, B.caps().num_cap), std::max(A.caps().den_cap, B.caps().den_cap)},
                   A.symbol_degree());
  for (const auto& [k, c] : A.terms()) out.add_term(k, c);
  for (const auto& [k, c] : B.terms()) out.add_term(k, c);
  return out;
}

inline FormalSeries scale(const FormalSeries& A, cplx factor) {
  FormalSeries out(A.window(), A.caps(), A.symbol_degree());
  for (const auto& [k, c] : A.terms()) out.add_term(k, factor * c);
  return out;
}

/// Max coefficient discrepancy over keys inside w; both sides must be complete on w.
inline double compare(const FormalSeries& A, const FormalSeries& B, const Window& w) {
  if (!A.window().covers(w) || !B.window().covers(w))
    throw CompletenessError("compare: window " + to_string(w) + " exceeds the completeness windows " +
                            to_string(A.window()) + " / " + to_string(B.window()));
  double worst = 0.0;
  for (const auto& [k, c] : A.terms())
    if (w.contains(k)) worst = std::max(worst, std::abs(c - B.coefficient(k)));
  for (const auto& [k, c] : B.terms())
    if (w.contains(k) && A.terms().find(k) == A.terms().end()) worst = std::max(worst, std::abs(c));
  return worst;
}

/// Largest n with n^k <= bound.
inline u64 integer_root(u64 bound, int k) {
  if (bound == kUnbounded) return kUnbounded;
  u64 n = static_cast<u64>(std::pow(static_cast<double>(bound), 1.0 / k));
  auto pw = [k](u64 x) {
    u64 r = 1;
    for (int i = 0; i < k; ++i) r = sat_mul(r, x);
    return r;
  };
  while (n > 0 && pw(n) > bound) --n;
  while (pw(n + 1) <= bound) ++n;
  return n;
}

/// sum_n coeff_fn(n) n^{-shift} X^{-w_mult ...}: n maps to X = n^w_mult,
/// Y = n^s_mult. Indices are bounded through the first carrier that grows.
inline FormalSeries build_lseries(const std::function<cplx(i64)>& coeff_fn, int w_mult, int s_mult, int shift,
                                  const std::function<bool(i64)>& restriction, const Window& window,
                                  double prune_threshold = 1e-15) {
  if (w_mult < 0) throw std::invalid_argument("build_lseries: w_mult must be nonnegative");
  if (w_mult == 0 && s_mult == 0) throw std::invalid_argument("build_lseries: no carrier bounds the index");
  u64 n_max;
  Window complete;
  if (w_mult > 0) {
    n_max = integer_root(window.X_max, w_mult);
    complete = {window.X_max, kUnbounded, kUnbounded};
  } else if (s_mult > 0) {
    n_max = integer_root(window.P_max, s_mult);
    complete = {kUnbounded, window.P_max, kUnbounded};
  } else {
    n_max = integer_root(window.Q_max, -s_mult);
    complete = {kUnbounded, kUnbounded, window.Q_max};
  }
  if (n_max == kUnbounded) throw CompletenessError("build_lseries: the bounding carrier is unbounded");
  const int sm = s_mult < 0 ? -s_mult : s_mult;
  const u64 y_cap = w_mult > 0 ? [&] {
    u64 r = 1;
    for (int i = 0; i < sm; ++i) r = sat_mul(r, n_max);
    return r;
  }()
                               : kUnbounded;
  const SupportCaps caps{s_mult > 0 ? y_cap : 1, s_mult < 0 ? y_cap : 1};
  FormalSeries out(complete, caps);
  for (u64 n = 1; n <= n_max; ++n) {
    const i64 ni = static_cast<i64>(n);
    if (restriction && !restriction(ni)) continue;
    u64 X = 1, Yp = 1;
    for (int i = 0; i < w_mult; ++i) X = checked_mul(X, n);
    for (int i = 0; i < sm; ++i) Yp = checked_mul(Yp, n);
    const PositiveRational Y = s_mult >= 0 ? PositiveRational{Yp, 1} : PositiveRational{1, Yp};
    out.add_term({X, Y}, coeff_fn(ni) * std::pow(static_cast<double>(n), -shift));
  }
  out.prune(prune_threshold);
  return out;
}

/// All n >= 1 with K/(D n), reduced, inside the Y part of w, ascending.
inline std::vector<u64> indices_for_ratio_over(u64 K, u64 D, const Window& w) {
  if (w.Q_max == kUnbounded) throw CompletenessError("indices_for_ratio_over: unbounded denominator window");
  std::vector<u64> out;
  for (i64 u_signed : divisors(static_cast<i64>(K))) {
    const u64 u = static_cast<u64>(u_signed);
    if (u > w.P_max) break;
    const u64 Du = checked_mul(D, u);
    const u64 v0 = Du / std::gcd(K, Du);
    for (u64 v = v0; v <= w.Q_max; v += v0) {
      if (std::gcd(u, v) != 1) continue;
      out.push_back(checked_mul(K / u, v) / (Du / u));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All n >= 1 with K n/D, reduced, inside the Y part of w, ascending.
inline std::vector<u64> indices_for_ratio_times(u64 K, u64 D, const Window& w) {
  if (w.P_max == kUnbounded) throw CompletenessError("indices_for_ratio_times: unbounded numerator window");
  std::vector<u64> out;
  for (i64 v_signed : divisors(static_cast<i64>(D))) {
    const u64 v = static_cast<u64>(v_signed);
    if (v > w.Q_max) break;
    const u64 Kv = checked_mul(K, v);
    const u64 u0 = Kv / std::gcd(D, Kv);
    for (u64 u = u0; u <= w.P_max; u += u0) {
      if (std::gcd(u, v) != 1) continue;
      out.push_back(checked_mul(D / v, u) / (Kv / v));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gl3
