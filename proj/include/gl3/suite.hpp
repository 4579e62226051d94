#pragma once

// The verification suite: a flat key=value configuration, one registered check
// per identity, and a runner that executes checks in parallel and returns
// reports sorted by check name.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "gl3/arith.hpp"
#include "gl3/characters.hpp"
#include "gl3/expsums.hpp"
#include "gl3/formal.hpp"
#include "gl3/hecke.hpp"
#include "gl3/identities.hpp"
#include "gl3/report.hpp"
#include "gl3/special.hpp"

namespace gl3 {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
  std::uint64_t seed = 20240611;
  std::map<std::string, double> tolerance;  // per-check overrides

  i64 gauss_c_max = 50;
  i64 sanity_c_max = 200;
  i64 reduction_c_max = 40;
  std::vector<i64> reduction_m_set{1, -1, 2, -2, 6, -6};
  i64 reduction_m2_max = 12;
  i64 collapse_c_max = 36;

  i64 prime_bound = 13;
  int power_bound = 4;
  int trials = 50;
  std::vector<i64> hecke_levels{1, 2, 3, 5};

  i64 euler_n_max = 300;
  std::vector<i64> euler_levels{1, 3};
  i64 euler_modulus = 5;

  std::vector<i64> ramanujan_cstar{3, 4, 5, 7, 8};
  i64 ramanujan_m_max = 24;
  i64 ramanujan_l_max = 48;
  std::vector<i64> ramanujan_levels{1, 2, 3};

  Window window{144, 48, 48};
  std::vector<i64> q_list{1, 2, 3, 6};
  std::vector<i64> cstar_list{3, 4, 5};
  std::vector<i64> identity_levels{1, 2};
  int seeds_per_case = 5;

  std::vector<i64> moebius_q{1, 2, 3, 4, 5, 6};
  std::vector<i64> moebius_m{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  std::vector<i64> moebius_cstar{3, 5};
  Window moebius_window{kUnbounded, 48, 48};

  std::vector<i64> orthogonality_c{1, 3, 4, 5, 8, 12};
  std::vector<i64> orthogonality_q{1, 2, 3};
  i64 orthogonality_n_max = 40;

  std::vector<double> bessel_s{0.8, 1.0, 1.7};
  std::vector<double> bessel_y{1.0, -1.0, 2.5, -2.5};

  std::vector<double> unitarity_t{0.0, 1.0, 2.3};
  int unitarity_draws = 100;
  i64 unitarity_c_max = 15;
  std::optional<std::pair<cplx, cplx>> unitarity_nu;  // explicit (nu1, nu2) instead of random draws

  bool fault_injection = false;
  std::optional<std::vector<std::string>> checks;  // unset: every registered check
  std::string output;
  std::string format = "text";

  double tol(const std::string& check, double fallback) const {
    auto it = tolerance.find(check);
    return it == tolerance.end() ? fallback : it->second;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline i64 parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "': expected an integer, got '" + v + "'");
  }
}

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "': expected a number, got '" + v + "'");
  }
}

inline std::vector<i64> parse_int_list(const std::string& key, const std::string& v) {
  std::vector<i64> out;
  for (const auto& item : split(v, ',')) out.push_back(parse_int(key, item));
  return out;
}

inline std::vector<double> parse_double_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split(v, ',')) out.push_back(parse_double(key, item));
  return out;
}

/// "x", "yi", "x+yi" or "x-yi".
inline cplx parse_complex(const std::string& key, std::string v) {
  v.erase(std::remove(v.begin(), v.end(), ' '), v.end());
  if (v.empty()) throw UsageError("config key '" + key + "': empty complex number");
  if (v.back() != 'i' && v.back() != 'j') return {parse_double(key, v), 0.0};
  v.pop_back();
  std::size_t split_at = std::string::npos;
  for (std::size_t k = v.size(); k-- > 1;)
    if ((v[k] == '+' || v[k] == '-') && v[k - 1] != 'e' && v[k - 1] != 'E') {
      split_at = k;
      break;
    }
  auto imag_part = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double(key, t);
  };
  if (split_at == std::string::npos) return {0.0, imag_part(v)};
  return {parse_double(key, v.substr(0, split_at)), imag_part(v.substr(split_at))};
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw UsageError("config key '" + key + "': expected true or false, got '" + v + "'");
}

}  // namespace detail

/// Each entry m stands for both m and -m.
inline std::vector<i64> symmetric_m_set(const std::vector<i64>& ms) {
  std::vector<i64> out;
  for (i64 m : ms) {
    if (m == 0) throw UsageError("m_set entries must be nonzero");
    for (i64 v : {std::abs(m), -std::abs(m)})
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

/// X:P:Q with positive integers or "inf".
inline Window parse_window(const std::string& text) {
  const auto parts = detail::split(text, ':');
  if (parts.size() != 3) throw UsageError("window must have the form X:P:Q, got '" + text + "'");
  u64 v[3];
  for (int i = 0; i < 3; ++i) {
    if (parts[i] == "inf") {
      v[i] = kUnbounded;
      continue;
    }
    const i64 x = detail::parse_int("window", parts[i]);
    if (x < 1) throw UsageError("window fields must be positive, got '" + text + "'");
    v[i] = static_cast<u64>(x);
  }
  return {v[0], v[1], v[2]};
}

/// Applies one key=value setting.
inline void apply_setting(SuiteConfig& cfg, const std::string& key, const std::string& value) {
  using namespace detail;
  auto positive = [&](i64 x) {
    if (x < 1) throw UsageError("config key '" + key + "' must be at least 1");
    return x;
  };
  auto positive_list = [&](std::vector<i64> xs) {
    for (i64 x : xs) positive(x);
    return xs;
  };
  if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
  else if (key.rfind("tol.", 0) == 0) cfg.tolerance[key.substr(4)] = parse_double(key, value);
  else if (key == "gauss_c_max") cfg.gauss_c_max = positive(parse_int(key, value));
  else if (key == "sanity_c_max") cfg.sanity_c_max = positive(parse_int(key, value));
  else if (key == "c_max" || key == "reduction_c_max") cfg.reduction_c_max = positive(parse_int(key, value));
  else if (key == "m_set") {
    cfg.reduction_m_set = symmetric_m_set(parse_int_list(key, value));
  } else if (key == "m2_max") cfg.reduction_m2_max = positive(parse_int(key, value));
  else if (key == "collapse_c_max") cfg.collapse_c_max = positive(parse_int(key, value));
  else if (key == "prime_bound") cfg.prime_bound = positive(parse_int(key, value));
  else if (key == "power_bound") cfg.power_bound = static_cast<int>(positive(parse_int(key, value)));
  else if (key == "trials") cfg.trials = static_cast<int>(positive(parse_int(key, value)));
  else if (key == "levels" || key == "hecke_levels") cfg.hecke_levels = positive_list(parse_int_list(key, value));
  else if (key == "euler_n_max") cfg.euler_n_max = positive(parse_int(key, value));
  else if (key == "euler_levels") cfg.euler_levels = positive_list(parse_int_list(key, value));
  else if (key == "euler_modulus") cfg.euler_modulus = positive(parse_int(key, value));
  else if (key == "ramanujan_cstar") cfg.ramanujan_cstar = positive_list(parse_int_list(key, value));
  else if (key == "ramanujan_m_max") cfg.ramanujan_m_max = positive(parse_int(key, value));
  else if (key == "ramanujan_l_max") cfg.ramanujan_l_max = positive(parse_int(key, value));
  else if (key == "ramanujan_levels") cfg.ramanujan_levels = positive_list(parse_int_list(key, value));
  else if (key == "window") cfg.window = parse_window(value);
  else if (key == "q_list") cfg.q_list = positive_list(parse_int_list(key, value));
  else if (key == "cstar_list") cfg.cstar_list = positive_list(parse_int_list(key, value));
  else if (key == "identity_levels") cfg.identity_levels = positive_list(parse_int_list(key, value));
  else if (key == "seeds_per_case") cfg.seeds_per_case = static_cast<int>(positive(parse_int(key, value)));
  else if (key == "moebius_q") cfg.moebius_q = positive_list(parse_int_list(key, value));
  else if (key == "moebius_m") cfg.moebius_m = positive_list(parse_int_list(key, value));
  else if (key == "moebius_cstar") cfg.moebius_cstar = positive_list(parse_int_list(key, value));
  else if (key == "moebius_window") cfg.moebius_window = parse_window(value);
  else if (key == "orthogonality_c") cfg.orthogonality_c = positive_list(parse_int_list(key, value));
  else if (key == "orthogonality_q") cfg.orthogonality_q = positive_list(parse_int_list(key, value));
  else if (key == "orthogonality_n_max") cfg.orthogonality_n_max = positive(parse_int(key, value));
  else if (key == "bessel_s") cfg.bessel_s = parse_double_list(key, value);
  else if (key == "bessel_y") cfg.bessel_y = parse_double_list(key, value);
  else if (key == "unitarity_t") cfg.unitarity_t = parse_double_list(key, value);
  else if (key == "unitarity_draws") cfg.unitarity_draws = static_cast<int>(positive(parse_int(key, value)));
  else if (key == "unitarity_c_max") cfg.unitarity_c_max = positive(parse_int(key, value));
  else if (key == "nu") {
    const auto parts = split(value, ',');
    if (parts.size() != 2) throw UsageError("config key 'nu': expected nu1,nu2");
    cfg.unitarity_nu = std::pair{parse_complex(key, parts[0]), parse_complex(key, parts[1])};
  }
  else if (key == "fault_injection") cfg.fault_injection = parse_bool(key, value);
  else if (key == "checks") cfg.checks = split(value, ',');
  else if (key == "output") cfg.output = value;
  else if (key == "format") {
    if (value != "json" && value != "text") throw UsageError("format must be json or text");
    cfg.format = value;
  } else throw UsageError("unknown config key '" + key + "'");
}

/// Lines of key = value; '#' starts a comment.
inline SuiteConfig parse_config(std::istream& in, SuiteConfig cfg = {}) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    apply_setting(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
  return cfg;
}

inline SuiteConfig load_config(const std::string& path, SuiteConfig cfg = {}) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open config file '" + path + "'");
  return parse_config(f, std::move(cfg));
}

// ---------------------------------------------------------------------------
// Checks

namespace checks {

using Params = std::map<std::string, std::string>;

inline std::string join(const std::vector<i64>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

inline std::string sci(double x) { return format_residual(x); }

inline std::string format_complex(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

inline VerificationReport gauss_modulus(const SuiteConfig& cfg) {
  double worst = 0.0;
  long count = 0;
  for (i64 c = 1; c <= cfg.gauss_c_max; ++c)
    for (const auto& chi : enumerate_characters(c, true)) {
      worst = std::max(worst, std::abs(std::abs(gauss_sum(chi)) - std::sqrt(static_cast<double>(c))));
      ++count;
    }
  return make_report("gauss-modulus", worst, cfg.tol("gauss-modulus", 1e-9),
                     {{"c_max", std::to_string(cfg.gauss_c_max)}, {"primitive_characters", std::to_string(count)}});
}

inline VerificationReport kloosterman_sanity(const SuiteConfig& cfg) {
  double reality = 0.0, symmetry = 0.0, weil_excess = 0.0, crt = 0.0;
  for (i64 c = 1; c <= cfg.sanity_c_max; ++c) {
    const KloostermanEvaluator S(c);
    std::vector<std::vector<cplx>> table;
    for (i64 b = 0; b < c; ++b) table.push_back(S.row(b));
    for (i64 a = 0; a < c; ++a)
      for (i64 b = 0; b < c; ++b) {
        reality = std::max(reality, std::abs(table[b][a].imag()));
        symmetry = std::max(symmetry, std::abs(table[b][a] - table[a][b]));
      }
    if (is_prime(c))
      for (i64 a = 1; a < c; ++a)
        for (i64 b = 1; b < c; ++b)
          weil_excess = std::max(weil_excess, std::abs(table[b][a]) - 2.0 * std::sqrt(static_cast<double>(c)));
    if (c <= 60) crt = std::max(crt, std::abs(S(1, 2) - kloosterman_crt(1, 2, c)));
  }
  weil_excess = std::max(weil_excess, 0.0);
  return make_report("kloosterman-sanity", std::max({reality, symmetry, weil_excess, crt}),
                     cfg.tol("kloosterman-sanity", 1e-9),
                     {{"c_max", std::to_string(cfg.sanity_c_max)},
                      {"reality", sci(reality)},
                      {"symmetry", sci(symmetry)},
                      {"weil_excess", sci(weil_excess)},
                      {"crt_cross_check", sci(crt)}});
}

inline VerificationReport kloosterman_reduction(const SuiteConfig& cfg) {
  const double tol = cfg.tol("kloosterman-reduction", 1e-8);
  const auto st = kloosterman_reduction_sweep(cfg.reduction_c_max, cfg.reduction_m_set, cfg.reduction_m2_max, tol);
  return make_report("kloosterman-reduction", st.worst, tol,
                     {{"c_max", std::to_string(cfg.reduction_c_max)},
                      {"m_set", join(cfg.reduction_m_set)},
                      {"m2_max", std::to_string(cfg.reduction_m2_max)},
                      {"characters", "all"},
                      {"cases", std::to_string(st.cases)},
                      {"failures", std::to_string(st.failures)},
                      {"failures_imprimitive_vanishing_branch", std::to_string(st.failures_imprimitive_vanishing)},
                      {"worst_primitive", sci(st.worst_primitive)},
                      {"worst_divisible_branch", sci(st.worst_divisible)},
                      {"first_failure", st.first_failure}});
}

/// The same sweep read under the hypothesis the identity is used with: chi primitive.
inline VerificationReport kloosterman_reduction_primitive(const SuiteConfig& cfg) {
  const double tol = cfg.tol("kloosterman-reduction-primitive", 1e-8);
  const auto st = kloosterman_reduction_sweep(cfg.reduction_c_max, cfg.reduction_m_set, cfg.reduction_m2_max, tol);
  return make_report("kloosterman-reduction-primitive", st.worst_primitive, tol,
                     {{"c_max", std::to_string(cfg.reduction_c_max)},
                      {"m_set", join(cfg.reduction_m_set)},
                      {"m2_max", std::to_string(cfg.reduction_m2_max)},
                      {"characters", "primitive"}});
}

inline VerificationReport additive_collapse(const SuiteConfig& cfg) {
  const auto st = additive_collapse_sweep(cfg.collapse_c_max);
  return make_report("additive-collapse", st.worst, cfg.tol("additive-collapse", 1e-9),
                     {{"c_max", std::to_string(cfg.collapse_c_max)},
                      {"pairs", std::to_string(st.pairs)},
                      {"cases", std::to_string(st.cases)}});
}

inline HeckeCoefficientModel model_for_trial(const DirichletCharacter& psi, std::uint64_t seed, int trial,
                                             ModelOptions opts = {}) {
  return HeckeCoefficientModel::make(psi, seed + 7919ULL * static_cast<std::uint64_t>(trial), opts);
}

inline VerificationReport hecke_relations(const SuiteConfig& cfg) {
  double r1 = 0.0, r2 = 0.0, adjoint = 0.0, contra = 0.0;
  long evaluations = 0;
  const auto primes = primes_up_to(cfg.prime_bound);
  for (i64 N : cfg.hecke_levels) {
    const auto psis = enumerate_characters(N);
    const auto ramified = factorize(N);
    for (int t = 0; t < cfg.trials; ++t) {
      const auto F = model_for_trial(psis[static_cast<std::size_t>(t) % psis.size()], cfg.seed, t);
      const auto Ft = F.contragredient();
      for (i64 p : primes) {
        if (N % p == 0) continue;
        for (int e = 0; e <= cfg.power_bound; ++e)
          for (int a = 0; a <= cfg.power_bound; ++a)
            for (int b = 0; b <= cfg.power_bound; ++b) {
              const i64 n = ipow(p, e), n1 = ipow(p, a), n2 = ipow(p, b);
              r1 = std::max(r1, hecke_relation_residual_1(F, n, n1, n2));
              r2 = std::max(r2, hecke_relation_residual_2(F, n, n1, n2));
              r2 = std::max(r2, hecke_relation_residual_2(Ft, n, n1, n2));
              evaluations += 3;
              for (const auto& [r, unused] : ramified) {
                // Ramified parts: second index of relation 1, and m in relation 2.
                r1 = std::max(r1, hecke_relation_residual_1(F, n, n1 * ipow(r, b), n2));
                r2 = std::max(r2, hecke_relation_residual_2(F, n * ipow(r, a), n1, n2));
                evaluations += 2;
              }
            }
      }
      for (i64 n = 1; n <= 100; ++n) {
        if (std::gcd(n, N) != 1) continue;
        adjoint = std::max(adjoint, adjoint_relation_residual(F, n));
        for (i64 m : {1, 2, 3, 5, 7}) {
          if (std::gcd(m, N) == 1) contra = std::max(contra, contragredient_relation_residual(F, Ft, m, n));
        }
      }
    }
  }
  return make_report("hecke-relations", std::max(r1, r2), cfg.tol("hecke-relations", 1e-10),
                     {{"levels", join(cfg.hecke_levels)},
                      {"prime_bound", std::to_string(cfg.prime_bound)},
                      {"power_bound", std::to_string(cfg.power_bound)},
                      {"trials", std::to_string(cfg.trials)},
                      {"relation_1", sci(r1)},
                      {"relation_2", sci(r2)},
                      {"adjoint", sci(adjoint)},
                      {"contragredient", sci(contra)},
                      {"evaluations", std::to_string(evaluations)}});
}

inline VerificationReport euler_product(const SuiteConfig& cfg) {
  double printed = 0.0, inserted = 0.0;
  for (i64 N : cfg.euler_levels)
    for (const auto& psi : enumerate_characters(N)) {
      const auto F = HeckeCoefficientModel::make(psi, cfg.seed);
      for (const auto& chi : enumerate_characters(cfg.euler_modulus)) {
        printed = std::max(printed, euler_product_residual(F, chi, 0.0, cfg.euler_n_max, EulerFactorForm::printed));
        inserted =
            std::max(inserted, euler_product_residual(F, chi, 0.0, cfg.euler_n_max, EulerFactorForm::psi_inserted));
      }
    }
  return make_report("euler-product", printed, cfg.tol("euler-product", 1e-9),
                     {{"levels", join(cfg.euler_levels)},
                      {"n_max", std::to_string(cfg.euler_n_max)},
                      {"chi_modulus", std::to_string(cfg.euler_modulus)},
                      {"form", "printed"},
                      {"psi_inserted_residual", sci(inserted)}});
}

inline VerificationReport ramanujan_lemma(const SuiteConfig& cfg) {
  double worst = 0.0;
  long cases = 0;
  for (i64 cs : cfg.ramanujan_cstar)
    for (i64 N : cfg.ramanujan_levels) {
      if (std::gcd(cs, N) != 1) continue;
      for (const auto& chi : enumerate_characters(cs, true))
        for (i64 m = 1; m <= cfg.ramanujan_m_max; ++m) {
          worst = std::max(worst, ramanujan_lemma_residual(chi, m, N, cfg.ramanujan_l_max));
          ++cases;
        }
    }
  return make_report("ramanujan-lemma", worst, cfg.tol("ramanujan-lemma", 1e-9),
                     {{"cstar", join(cfg.ramanujan_cstar)},
                      {"m_max", std::to_string(cfg.ramanujan_m_max)},
                      {"l_max", std::to_string(cfg.ramanujan_l_max)},
                      {"levels", join(cfg.ramanujan_levels)},
                      {"cases", std::to_string(cases)}});
}

/// Every admissible (N, psi, q, c*, chi*, seed) of the identity sweep.
template <class Fn>
void for_each_identity_case(const SuiteConfig& cfg, Fn&& fn) {
  for (i64 N : cfg.identity_levels)
    for (const auto& psi : enumerate_characters(N))
      for (i64 q : cfg.q_list) {
        if (std::gcd(q, N) != 1) continue;
        for (i64 cs : cfg.cstar_list) {
          if (std::gcd(cs, N) != 1) continue;
          for (const auto& chi : enumerate_characters(cs, true))
            for (int s = 0; s < cfg.seeds_per_case; ++s) fn(model_for_trial(psi, cfg.seed, s), q, chi);
        }
      }
}

/// Model used by the identity checks, corrupted at A(1,2) in fault-injection mode.
inline HeckeCoefficientModel maybe_corrupt(const SuiteConfig& cfg, const HeckeCoefficientModel& F) {
  return cfg.fault_injection ? F.with_perturbation(1, 2, 1e-3) : F;
}

inline VerificationReport z_expansion(const SuiteConfig& cfg) {
  double worst = 0.0;
  long cases = 0;
  for_each_identity_case(cfg, [&](const HeckeCoefficientModel& F, i64 q, const DirichletCharacter& chi) {
    worst = std::max(worst, verify_Z_expansion(maybe_corrupt(cfg, F), q, chi, cfg.window));
    ++cases;
  });
  return make_report("z-expansion", worst, cfg.tol("z-expansion", 1e-8),
                     {{"window", to_string(cfg.window)},
                      {"q_list", join(cfg.q_list)},
                      {"cstar_list", join(cfg.cstar_list)},
                      {"levels", join(cfg.identity_levels)},
                      {"seeds_per_case", std::to_string(cfg.seeds_per_case)},
                      {"cases", std::to_string(cases)},
                      {"fault_injection", cfg.fault_injection ? "true" : "false"}});
}

inline VerificationReport fe_rearrangement(const SuiteConfig& cfg) {
  double series = 0.0, norm = 0.0;
  long cases = 0;
  for_each_identity_case(cfg, [&](const HeckeCoefficientModel& F, i64 q, const DirichletCharacter& chi) {
    const auto r = fe_rearrangement_details(F.contragredient(), F.nebentypus(), q, chi, cfg.window);
    series = std::max(series, r.series_residual);
    norm = std::max(norm, r.normalization_residual);
    ++cases;
  });
  return make_report("fe-rearrangement", std::max(series, norm), cfg.tol("fe-rearrangement", 1e-8),
                     {{"window", to_string(cfg.window)},
                      {"q_list", join(cfg.q_list)},
                      {"cstar_list", join(cfg.cstar_list)},
                      {"levels", join(cfg.identity_levels)},
                      {"seeds_per_case", std::to_string(cfg.seeds_per_case)},
                      {"cases", std::to_string(cases)},
                      {"series_residual", sci(series)},
                      {"normalization_residual", sci(norm)},
                      {"symbol_degree", "1"}});
}

inline VerificationReport moebius_assembly(const SuiteConfig& cfg) {
  double worst = 0.0;
  long cases = 0;
  for (i64 N : cfg.identity_levels)
    for (const auto& psi : enumerate_characters(N)) {
      const auto F = maybe_corrupt(cfg, HeckeCoefficientModel::make(psi, cfg.seed));
      for (i64 cs : cfg.moebius_cstar) {
        if (std::gcd(cs, N) != 1) continue;
        for (const auto& chi : enumerate_characters(cs, true))
          for (i64 q : cfg.moebius_q)
            for (i64 m : cfg.moebius_m) {
              if (std::gcd(q * m, N) != 1) continue;
              worst = std::max(worst, verify_moebius_assembly(F, q, m, chi, cfg.moebius_window));
              ++cases;
            }
      }
    }
  return make_report("moebius-assembly", worst, cfg.tol("moebius-assembly", 1e-10),
                     {{"q_list", join(cfg.moebius_q)},
                      {"m_list", join(cfg.moebius_m)},
                      {"cstar", join(cfg.moebius_cstar)},
                      {"window", to_string(cfg.moebius_window)},
                      {"levels", join(cfg.identity_levels)},
                      {"cases", std::to_string(cases)}});
}

inline VerificationReport orthogonality(const SuiteConfig& cfg) {
  double worst = 0.0;
  long cases = 0;
  for (i64 N : cfg.identity_levels)
    for (const auto& psi : enumerate_characters(N)) {
      const auto F = HeckeCoefficientModel::make(psi, cfg.seed);
      for (i64 c : cfg.orthogonality_c)
        for (i64 q : cfg.orthogonality_q) {
          if (std::gcd(c * q, N) != 1) continue;
          worst = std::max(worst, verify_orthogonality_equivalence(F, q, c, cfg.orthogonality_n_max));
          ++cases;
        }
    }
  return make_report("orthogonality", worst, cfg.tol("orthogonality", 1e-9),
                     {{"c_list", join(cfg.orthogonality_c)},
                      {"q_list", join(cfg.orthogonality_q)},
                      {"n_max", std::to_string(cfg.orthogonality_n_max)},
                      {"cases", std::to_string(cases)}});
}

inline VerificationReport bessel_identity(const SuiteConfig& cfg) {
  double worst = 0.0;
  long cases = 0;
  for (double s : cfg.bessel_s)
    for (int k : {0, 1}) {
      if (k == 1 && s <= 1.0) continue;
      for (double y : cfg.bessel_y) {
        worst = std::max(worst, fourier_bessel_identity_residual(s, k, y));
        ++cases;
      }
    }
  const auto spot = fourier_bessel_sides(1.0, 0, 1.0);
  const double spot_err = std::abs(spot.lhs - std::numbers::pi * std::exp(-2.0 * std::numbers::pi));
  return make_report("bessel-identity", worst, cfg.tol("bessel-identity", 1e-6),
                     {{"cases", std::to_string(cases)}, {"spot_value_error", sci(spot_err)}});
}

/// Dyadic spectral parameters with `bits` fractional bits in [-2, 2].
inline std::pair<cplx, cplx> dyadic_nu(std::mt19937_64& rng, int bits = 20) {
  std::uniform_int_distribution<long> d(-(2L << bits), 2L << bits);
  const double scale = std::ldexp(1.0, -bits);
  return {{d(rng) * scale, d(rng) * scale}, {d(rng) * scale, d(rng) * scale}};
}

/// alpha, beta, gamma from their defining expressions in (nu1, nu2), compared
/// exactly with the stored triple and with zero.
inline bool exact_parameter_sum(cplx nu1, cplx nu2) {
  const cplx a = -nu1 - 2.0 * nu2 + 1.0, b = -nu1 + nu2, c = 2.0 * nu1 + nu2 - 1.0;
  const GammaData g = GammaData::from_nu(nu1, nu2);
  return a + b + c == cplx{0.0, 0.0} && g.alpha == a && g.beta == b && g.gamma == c &&
         g.alpha + g.beta + g.gamma == cplx{0.0, 0.0};
}

/// max | |Xi(1/2+it)| - 1 | over primitive psi*chi with c <= c_max, N | c.
inline double xi_unitarity_residual(const GammaData& g, const std::vector<double>& ts, i64 c_max, long& cases) {
  double worst = 0.0;
  for (i64 c = 1; c <= c_max; ++c) {
    const auto chis = enumerate_characters(c, true);
    for (i64 N : divisors(c))
      for (const auto& psi : enumerate_characters(N))
        for (const auto& chi : chis) {
          const DirichletCharacter pc = multiply(psi, chi);
          if (!pc.is_primitive()) continue;
          const int kappa = pc.parity() == 1 ? 0 : 1;
          const cplx tpc = gauss_sum(pc), tc = gauss_sum(chi);
          for (double t : ts) {
            const cplx xi = xi_factor(cplx{0.5, t}, g, kappa, tpc, tc, static_cast<double>(c));
            worst = std::max(worst, std::abs(std::abs(xi) - 1.0));
            ++cases;
          }
        }
  }
  return worst;
}

inline bool purely_imaginary(const GammaData& g) {
  return std::all_of(g.params().begin(), g.params().end(), [](const cplx& x) { return std::abs(x.real()) < 1e-14; });
}

inline VerificationReport gamma_unitarity(const SuiteConfig& cfg) {
  Params params{{"c_max", std::to_string(cfg.unitarity_c_max)}};
  long exact_failures = 0, cases = 0;
  double worst = 0.0;
  if (cfg.unitarity_nu) {
    const auto [nu1, nu2] = *cfg.unitarity_nu;
    if (!exact_parameter_sum(nu1, nu2)) ++exact_failures;
    const GammaData g = GammaData::from_nu(nu1, nu2);
    if (purely_imaginary(g)) {
      worst = xi_unitarity_residual(g, cfg.unitarity_t, cfg.unitarity_c_max, cases);
      params["xi_check"] = "run";
    } else {
      params["xi_check"] = "skipped: (alpha,beta,gamma) not purely imaginary";
    }
    params["nu1"] = format_complex(nu1);
    params["nu2"] = format_complex(nu2);
  } else {
    std::mt19937_64 rng(cfg.seed);
    for (int i = 0; i < cfg.unitarity_draws; ++i) {
      const auto [nu1, nu2] = dyadic_nu(rng);
      if (!exact_parameter_sum(nu1, nu2)) ++exact_failures;
    }
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 10; ++i) {
      const GammaData g = GammaData::from_alpha_beta(cplx{0.0, u(rng)}, cplx{0.0, u(rng)});
      worst = std::max(worst, xi_unitarity_residual(g, cfg.unitarity_t, cfg.unitarity_c_max, cases));
    }
    params["draws"] = std::to_string(cfg.unitarity_draws);
  }
  params["exact_sum_failures"] = std::to_string(exact_failures);
  params["xi_cases"] = std::to_string(cases);
  const double residual = exact_failures > 0 ? std::numeric_limits<double>::infinity() : worst;
  return make_report("gamma-unitarity", residual, cfg.tol("gamma-unitarity", 1e-8), params);
}

}  // namespace checks

struct RegisteredCheck {
  std::string name;
  std::function<VerificationReport(const SuiteConfig&)> run;
};

inline const std::vector<RegisteredCheck>& registered_checks() {
  static const std::vector<RegisteredCheck> all{
      {"additive-collapse", checks::additive_collapse},
      {"bessel-identity", checks::bessel_identity},
      {"euler-product", checks::euler_product},
      {"fe-rearrangement", checks::fe_rearrangement},
      {"gamma-unitarity", checks::gamma_unitarity},
      {"gauss-modulus", checks::gauss_modulus},
      {"hecke-relations", checks::hecke_relations},
      {"kloosterman-reduction", checks::kloosterman_reduction},
      {"kloosterman-reduction-primitive", checks::kloosterman_reduction_primitive},
      {"kloosterman-sanity", checks::kloosterman_sanity},
      {"moebius-assembly", checks::moebius_assembly},
      {"orthogonality", checks::orthogonality},
      {"ramanujan-lemma", checks::ramanujan_lemma},
      {"z-expansion", checks::z_expansion},
  };
  return all;
}

inline const RegisteredCheck& find_check(const std::string& name) {
  for (const auto& c : registered_checks())
    if (c.name == name) return c;
  throw UsageError("unknown check '" + name + "'");
}

/// Thread count from GL3_THREADS, else the hardware concurrency.
inline unsigned suite_threads() {
  if (const char* env = std::getenv("GL3_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("GL3_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs the selected checks; a check that throws is recorded as a failure
/// with the message in its parameters.
inline std::vector<VerificationReport> run_suite(const SuiteConfig& cfg) {
  std::vector<const RegisteredCheck*> selected;
  if (!cfg.checks) {
    for (const auto& c : registered_checks()) selected.push_back(&c);
  } else {
    for (const auto& name : *cfg.checks) selected.push_back(&find_check(name));
  }
  std::vector<VerificationReport> reports(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < selected.size(); i = next++) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        reports[i] = selected[i]->run(cfg);
      } catch (const std::exception& e) {
        reports[i] = make_report(selected[i]->name, std::numeric_limits<double>::infinity(), 0.0, {{"error", e.what()}});
        reports[i].pass = false;
      }
      reports[i].runtime_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const unsigned n = std::min<unsigned>(suite_threads(), static_cast<unsigned>(std::max<std::size_t>(selected.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::sort(reports.begin(), reports.end(),
            [](const VerificationReport& a, const VerificationReport& b) { return a.check_name < b.check_name; });
  return reports;
}

inline bool all_pass(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const VerificationReport& r) { return r.pass; });
}

}  // namespace gl3
