#pragma once

// Exact integer utilities: factorization, divisors, Moebius, inverses and
// the structure of (Z/qZ)^x. Everything here works on 64-bit signed integers
// by trial division; moduli in this library stay well below 10^8.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gl3 {

using i64 = std::int64_t;
using u64 = std::uint64_t;

struct PrimePower {
  i64 prime;
  int exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Sorted by prime; the empty list factors 1.
using Factorization = std::vector<PrimePower>;

namespace detail {

inline const std::vector<i64>& small_primes() {
  static const std::vector<i64> primes = [] {
    constexpr i64 kLimit = 1 << 16;
    std::vector<bool> composite(kLimit + 1, false);
    std::vector<i64> out;
    for (i64 i = 2; i <= kLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (i64 j = i * i; j <= kLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

inline i64 mulmod(i64 a, i64 b, i64 m) {
  return static_cast<i64>((static_cast<__int128>(a) * b) % m);
}

}  // namespace detail

/// Least nonnegative residue of a mod c (c >= 1).
inline i64 mod(i64 a, i64 c) {
  i64 r = a % c;
  return r < 0 ? r + c : r;
}

inline i64 powmod(i64 base, i64 exp, i64 m) {
  if (m == 1) return 0;
  i64 result = 1;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = detail::mulmod(result, base, m);
    base = detail::mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline i64 ipow(i64 base, int exp) {
  i64 result = 1;
  for (int i = 0; i < exp; ++i) result *= base;
  return result;
}

inline Factorization factorize(i64 n) {
  if (n <= 0) throw std::invalid_argument("factorize: n must be positive, got " + std::to_string(n));
  Factorization out;
  for (i64 p : detail::small_primes()) {
    if (p * p > n) break;
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) {
    // Remaining cofactor is prime unless it exceeds the sieve range squared.
    i64 p = detail::small_primes().back() + 2;
    while (p * p <= n) {
      if (n % p == 0) {
        int e = 0;
        while (n % p == 0) {
          n /= p;
          ++e;
        }
        out.push_back({p, e});
      }
      p += 2;
    }
    if (n > 1) out.push_back({n, 1});
  }
  return out;
}

inline i64 unfactor(const Factorization& f) {
  i64 n = 1;
  for (const auto& [p, e] : f) n *= ipow(p, e);
  return n;
}

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  auto f = factorize(n);
  return f.size() == 1 && f[0].exponent == 1;
}

inline std::vector<i64> primes_up_to(i64 bound) {
  std::vector<i64> out;
  for (i64 n = 2; n <= bound; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

/// Positive divisors of |n|, ascending. Negative n is allowed: the divisors
/// of cm with cm < 0 are those of |cm|.
inline std::vector<i64> divisors(i64 n) {
  if (n == 0) throw std::invalid_argument("divisors: n must be nonzero");
  if (n < 0) n = -n;
  std::vector<i64> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    i64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline int mobius(i64 n) {
  if (n < 1) throw std::invalid_argument("mobius: n must be positive");
  int sign = 1;
  for (const auto& pe : factorize(n)) {
    if (pe.exponent > 1) return 0;
    sign = -sign;
  }
  return sign;
}

inline i64 euler_phi(i64 n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
  i64 phi = n;
  for (const auto& pe : factorize(n)) phi = phi / pe.prime * (pe.prime - 1);
  return phi;
}

inline i64 lcm(i64 a, i64 b) { return a / std::gcd(a, b) * b; }

/// Returns abar in [1, c) with a*abar = 1 mod c; for c = 1 returns 0.
inline i64 mod_inverse(i64 a, i64 c) {
  if (c < 1) throw std::invalid_argument("mod_inverse: modulus must be positive");
  if (c == 1) return 0;
  i64 r0 = c, r1 = mod(a, c);
  i64 t0 = 0, t1 = 1;
  while (r1 != 0) {
    const i64 q = r0 / r1;
    r0 = std::exchange(r1, r0 - q * r1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0 != 1)
    throw std::domain_error("mod_inverse: " + std::to_string(a) + " is not invertible mod " +
                            std::to_string(c));
  return mod(t0, c);
}

/// Multiplicative order of a unit a mod m.
inline i64 multiplicative_order(i64 a, i64 m) {
  const i64 phi = euler_phi(m);
  i64 order = phi;
  for (const auto& [p, e] : factorize(phi)) {
    for (int k = 0; k < e; ++k) {
      if (powmod(a, order / p, m) == 1)
        order /= p;
      else
        break;
    }
  }
  return order;
}

struct UnitGenerator {
  i64 generator;
  i64 order;

  friend bool operator==(const UnitGenerator&, const UnitGenerator&) = default;
};

/// Generators of (Z/qZ)^x assembled by CRT over the prime powers of q: one
/// primitive root per odd prime power, -1 for 4, and (-1, 5) for 2^e, e >= 3.
/// Each generator is congruent to 1 modulo the other prime-power components.
inline std::vector<UnitGenerator> unit_group_generators(i64 q) {
  if (q < 1) throw std::invalid_argument("unit_group_generators: q must be positive");
  std::vector<UnitGenerator> out;
  for (const auto& [p, e] : factorize(q)) {
    const i64 pe = ipow(p, e);
    const i64 rest = q / pe;
    std::vector<UnitGenerator> local;
    if (p == 2) {
      if (e >= 2) local.push_back({pe - 1, 2});
      if (e >= 3) local.push_back({5, pe / 4});
    } else {
      const i64 phi = pe / p * (p - 1);
      for (i64 g = 2; g < pe; ++g) {
        if (g % p == 0) continue;
        if (multiplicative_order(g, pe) == phi) {
          local.push_back({g, phi});
          break;
        }
      }
    }
    for (const auto& [g, order] : local) {
      // x = g mod pe, x = 1 mod rest
      const i64 lift = rest == 1 ? g : mod(g + pe * detail::mulmod(mod(1 - g, rest), mod_inverse(pe, rest), rest), q);
      out.push_back({lift, order});
    }
  }
  return out;
}

}  // namespace gl3
