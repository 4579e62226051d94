// gl3verify: command-line front end to the verification suite.
//
//   gl3verify chars list --modulus q [--primitive-only]
//   gl3verify verify <check> [flags]
//   gl3verify suite [--config FILE] [--format json|text] [--output PATH] [--fault-injection] [--seed S]
//
// Exit codes: 0 all checks pass, 1 some check fails, 2 usage error.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gl3/suite.hpp"

namespace {

struct Common {
  std::string config_path;
  std::string format;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> set;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "key = value configuration file");
  cmd->add_option("--format", c.format, "report format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--output", c.output, "report path (default: standard output)");
  cmd->add_option("--seed", c.seed, "model seed");
  cmd->add_option("--set", c.set, "extra key=value setting (repeatable)");
}

gl3::SuiteConfig base_config(const Common& c) {
  gl3::SuiteConfig cfg;
  if (!c.config_path.empty()) cfg = gl3::load_config(c.config_path);
  for (const auto& kv : c.set) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw gl3::UsageError("--set expects key=value, got '" + kv + "'");
    gl3::apply_setting(cfg, gl3::detail::trim(kv.substr(0, eq)), gl3::detail::trim(kv.substr(eq + 1)));
  }
  if (c.seed) cfg.seed = *c.seed;
  if (!c.format.empty()) cfg.format = c.format;
  if (!c.output.empty()) cfg.output = c.output;
  return cfg;
}

int emit(const gl3::SuiteConfig& cfg, const std::vector<gl3::VerificationReport>& reports) {
  gl3::emit_report({gl3::kSuiteVersion, cfg.seed, reports}, cfg.format, cfg.output, std::cout);
  return gl3::all_pass(reports) ? 0 : 1;
}

void list_characters(gl3::i64 q, bool primitive_only) {
  if (q < 1) throw gl3::UsageError("--modulus must be at least 1");
  std::cout << "modulus " << q << "\n";
  std::cout << "generators";
  const auto group = gl3::DirichletGroup::make(q);
  for (const auto& g : group->generators()) std::cout << " " << g.generator << "(order " << g.order << ")";
  std::cout << "\n";
  for (const auto& chi : gl3::enumerate_characters(q, primitive_only)) {
    std::cout << "exponents [";
    for (std::size_t i = 0; i < chi.exponents().size(); ++i) std::cout << (i ? "," : "") << chi.exponents()[i];
    std::cout << "] conductor " << chi.conductor() << " parity " << (chi.parity() == 1 ? "even" : "odd") << "\n";
  }
}

// Flag values for `verify`; each is forwarded to the config key of the chosen check.
struct VerifyFlags {
  std::string check;
  std::optional<double> tol;
  std::optional<std::string> c_max, m_set, m2_max, level, prime_bound, power_bound, trials, q, cstar, window, m, c,
      grid, nu1, nu2, n_max, l_max;
};

// check -> (flag -> config key)
const std::map<std::string, std::map<std::string, std::string>>& flag_routes() {
  static const std::map<std::string, std::map<std::string, std::string>> routes{
      {"gauss-modulus", {{"c-max", "gauss_c_max"}}},
      {"kloosterman-sanity", {{"c-max", "sanity_c_max"}}},
      {"kloosterman-reduction", {{"c-max", "reduction_c_max"}, {"m-set", "m_set"}, {"m2-max", "m2_max"}}},
      {"kloosterman-reduction-primitive", {{"c-max", "reduction_c_max"}, {"m-set", "m_set"}, {"m2-max", "m2_max"}}},
      {"additive-collapse", {{"c-max", "collapse_c_max"}}},
      {"hecke-relations",
       {{"level", "hecke_levels"}, {"prime-bound", "prime_bound"}, {"power-bound", "power_bound"}, {"trials", "trials"}}},
      {"euler-product", {{"level", "euler_levels"}, {"n-max", "euler_n_max"}, {"c", "euler_modulus"}}},
      {"ramanujan-lemma",
       {{"cstar", "ramanujan_cstar"}, {"level", "ramanujan_levels"}, {"m", "ramanujan_m_max"}, {"l-max", "ramanujan_l_max"}}},
      {"z-expansion", {{"q", "q_list"}, {"cstar", "cstar_list"}, {"level", "identity_levels"}, {"window", "window"}, {"trials", "seeds_per_case"}}},
      {"fe-rearrangement",
       {{"q", "q_list"}, {"cstar", "cstar_list"}, {"level", "identity_levels"}, {"window", "window"}, {"trials", "seeds_per_case"}}},
      {"moebius-assembly",
       {{"q", "moebius_q"}, {"m", "moebius_m"}, {"cstar", "moebius_cstar"}, {"level", "identity_levels"}, {"window", "moebius_window"}}},
      {"orthogonality",
       {{"q", "orthogonality_q"}, {"c", "orthogonality_c"}, {"level", "identity_levels"}, {"n-max", "orthogonality_n_max"}}},
      {"bessel-identity", {{"grid", "grid"}}},
      {"gamma-unitarity", {{"c-max", "unitarity_c_max"}}},
  };
  return routes;
}

int run_verify(const VerifyFlags& f, const Common& common) {
  gl3::SuiteConfig cfg = base_config(common);
  gl3::find_check(f.check);
  const auto& route = flag_routes().at(f.check);
  const std::vector<std::pair<std::string, const std::optional<std::string>*>> given{
      {"c-max", &f.c_max},   {"m-set", &f.m_set},     {"m2-max", &f.m2_max}, {"level", &f.level},
      {"prime-bound", &f.prime_bound}, {"power-bound", &f.power_bound}, {"trials", &f.trials},
      {"q", &f.q},           {"cstar", &f.cstar},     {"window", &f.window}, {"m", &f.m},
      {"c", &f.c},           {"grid", &f.grid},       {"n-max", &f.n_max},   {"l-max", &f.l_max}};
  for (const auto& [flag, value] : given) {
    if (!*value) continue;
    const auto it = route.find(flag);
    if (it == route.end()) throw gl3::UsageError("--" + flag + " does not apply to " + f.check);
    if (it->second == "grid") {
      if (**value != "default") throw gl3::UsageError("--grid supports only 'default'");
      continue;
    }
    gl3::apply_setting(cfg, it->second, **value);
  }
  if (f.nu1 || f.nu2) {
    if (f.check != "gamma-unitarity") throw gl3::UsageError("--nu1/--nu2 apply only to gamma-unitarity");
    if (!f.nu1 || !f.nu2) throw gl3::UsageError("--nu1 and --nu2 must be given together");
    gl3::apply_setting(cfg, "nu", *f.nu1 + "," + *f.nu2);
  }
  if (f.tol) {
    if (!(*f.tol >= 0.0)) throw gl3::UsageError("--tol must be nonnegative");
    cfg.tolerance[f.check] = *f.tol;
  }
  cfg.checks = std::vector<std::string>{f.check};
  return emit(cfg, gl3::run_suite(cfg));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suite for GL(3) Voronoi-formula identities"};
  app.require_subcommand(1);

  auto* chars = app.add_subcommand("chars", "Dirichlet character utilities");
  chars->require_subcommand(1);
  auto* chars_list = chars->add_subcommand("list", "list characters modulo q");
  gl3::i64 modulus = 0;
  bool primitive_only = false;
  chars_list->add_option("--modulus", modulus, "modulus q")->required();
  chars_list->add_flag("--primitive-only", primitive_only, "only primitive characters");

  auto* verify = app.add_subcommand("verify", "run a single check");
  VerifyFlags vf;
  Common vcommon;
  std::vector<std::string> names;
  for (const auto& c : gl3::registered_checks()) names.push_back(c.name);
  verify->add_option("check", vf.check, "check name")->required()->check(CLI::IsMember(names));
  verify->add_option("--tol", vf.tol, "tolerance");
  verify->add_option("--c-max", vf.c_max, "largest modulus");
  verify->add_option("--m-set", vf.m_set, "comma list of m (each taken with both signs)");
  verify->add_option("--m2-max", vf.m2_max, "bound on |m2|");
  verify->add_option("--level", vf.level, "comma list of levels N");
  verify->add_option("--prime-bound", vf.prime_bound, "largest unramified prime");
  verify->add_option("--power-bound", vf.power_bound, "largest exponent");
  verify->add_option("--trials", vf.trials, "seeded models per case");
  verify->add_option("--q", vf.q, "comma list of q");
  verify->add_option("--cstar", vf.cstar, "comma list of c*");
  verify->add_option("--window", vf.window, "truncation window X:P:Q");
  verify->add_option("--m", vf.m, "comma list of m (ramanujan-lemma: bound on m)");
  verify->add_option("--c", vf.c, "comma list of c (euler-product: modulus of chi)");
  verify->add_option("--n-max", vf.n_max, "coefficient bound");
  verify->add_option("--l-max", vf.l_max, "bound on l");
  verify->add_option("--grid", vf.grid, "parameter grid (default)");
  verify->add_option("--nu1", vf.nu1, "spectral parameter nu1 (x, yi or x+yi)");
  verify->add_option("--nu2", vf.nu2, "spectral parameter nu2");
  add_common(verify, vcommon);

  auto* suite = app.add_subcommand("suite", "run every registered check");
  Common scommon;
  bool fault_injection = false;
  std::string checks;
  add_common(suite, scommon);
  suite->add_flag("--fault-injection", fault_injection, "corrupt the model to confirm the checks catch it");
  suite->add_option("--checks", checks, "comma list of checks to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (chars_list->parsed()) {
      list_characters(modulus, primitive_only);
      return 0;
    }
    if (verify->parsed()) return run_verify(vf, vcommon);
    gl3::SuiteConfig cfg = base_config(scommon);
    if (fault_injection) cfg.fault_injection = true;
    if (suite->count("--checks")) gl3::apply_setting(cfg, "checks", checks);
    return emit(cfg, gl3::run_suite(cfg));
  } catch (const gl3::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
