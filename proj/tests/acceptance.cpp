// Acceptance run: one PASS/FAIL line per criterion, default configuration.
//
//   acceptance [--criterion N]
//
// Exit status is 0 only if every selected criterion passes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "gl3/suite.hpp"

namespace {

using gl3::SuiteConfig;
using gl3::VerificationReport;
namespace checks = gl3::checks;

struct Outcome {
  double residual = 0.0;
  std::string detail;
  bool extra_ok = true;
};

struct Criterion {
  int id;
  std::string title;
  double tol;
  double limit_s;  // wall-clock limit
  std::function<Outcome(const SuiteConfig&)> run;
};

double param(const VerificationReport& r, const std::string& key) { return std::stod(r.parameters.at(key)); }

std::vector<Criterion> criteria() {
  return {
      {1, "Gauss sum modulus, primitive chi, c* <= 50", 1e-9, 1.0,
       [](const SuiteConfig& cfg) {
         const auto r = checks::gauss_modulus(cfg);
         return Outcome{r.max_residual, "characters=" + r.parameters.at("primitive_characters")};
       }},
      {2, "Kloosterman reality, symmetry and Weil bound, c <= 200", 1e-9, 60.0,
       [](const SuiteConfig& cfg) {
         const auto r = checks::kloosterman_sanity(cfg);
         return Outcome{r.max_residual, "weil_excess=" + r.parameters.at("weil_excess") +
                                            " crt_cross_check=" + r.parameters.at("crt_cross_check")};
       }},
      {3, "character-Kloosterman reduction, all chi mod c, c <= 40", 1e-8, 30.0,
       [](const SuiteConfig& cfg) {
         const auto r = checks::kloosterman_reduction(cfg);
         return Outcome{r.max_residual, "failures=" + r.parameters.at("failures") + "/" + r.parameters.at("cases") +
                                            " imprimitive_vanishing_branch=" +
                                            r.parameters.at("failures_imprimitive_vanishing_branch") +
                                            " primitive_chi_residual=" + r.parameters.at("worst_primitive")};
       }},
      {4, "additive collapse, psi*chi primitive, c <= 36", 1e-9, 10.0,
       [](const SuiteConfig& cfg) {
         const auto r = checks::additive_collapse(cfg);
         return Outcome{r.max_residual, "pairs=" + r.parameters.at("pairs")};
       }},
      {5, "Hecke relations, p <= 13, exponents <= 4, 50 models, N in {1,2,3,5}", 1e-10, 30.0,
       [](const SuiteConfig& cfg) {
         const auto r = checks::hecke_relations(cfg);
         return Outcome{r.max_residual, ""};
       }},
      {6, "Euler product, n <= 300, N in {1,3}, chi mod 5", 1e-9, 5.0,
       [](const SuiteConfig& cfg) {
         const auto r = checks::euler_product(cfg);
         return Outcome{r.max_residual, "form=printed"};
       }},
      {7, "coefficient Ramanujan-sum lemma, c* in {3,4,5,7,8}", 1e-9, 10.0,
       [](const SuiteConfig& cfg) {
         const auto r = checks::ramanujan_lemma(cfg);
         return Outcome{r.max_residual, "cases=" + r.parameters.at("cases")};
       }},
      {8, "Z-expansion and FE rearrangement, window 144:48:48, plus fault injection", 1e-8, 60.0,
       [](const SuiteConfig& cfg) {
         const auto z = checks::z_expansion(cfg);
         const auto fe = checks::fe_rearrangement(cfg);
         SuiteConfig bad = cfg;
         bad.fault_injection = true;
         const auto zf = checks::z_expansion(bad);
         const bool caught = zf.max_residual > 1e-5;
         return Outcome{std::max(z.max_residual, fe.max_residual),
                        "z=" + gl3::format_residual(z.max_residual) + " fe=" + gl3::format_residual(fe.max_residual) +
                            " injected=" + gl3::format_residual(zf.max_residual) + (caught ? " (caught)" : " (missed)"),
                        caught};
       }},
      {9, "Moebius assembly, q <= 6, m <= 12, c* in {3,5}", 1e-10, 10.0,
       [](const SuiteConfig& cfg) {
         const auto r = checks::moebius_assembly(cfg);
         return Outcome{r.max_residual, "cases=" + r.parameters.at("cases")};
       }},
      {10, "Fourier K-Bessel identity (relative) and spot value", 1e-6, 10.0,
       [](const SuiteConfig& cfg) {
         const auto r = checks::bessel_identity(cfg);
         const double spot = param(r, "spot_value_error");
         return Outcome{r.max_residual, "spot_value_error=" + r.parameters.at("spot_value_error"), spot < 1e-8};
       }},
      {11, "gamma factor unitarity and exact parameter sum", 1e-8, 10.0,
       [](const SuiteConfig& cfg) {
         const auto r = checks::gamma_unitarity(cfg);
         return Outcome{r.max_residual, "exact_sum_failures=" + r.parameters.at("exact_sum_failures") + "/" +
                                            r.parameters.at("draws"),
                        r.parameters.at("exact_sum_failures") == "0"};
       }},
  };
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  const SuiteConfig cfg;
  bool all = true, any = false;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    any = true;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    std::string error;
    try {
      o = c.run(cfg);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = error.empty() && o.residual < c.tol && o.extra_ok && secs < c.limit_s;
    all = all && pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", secs, c.limit_s);
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title
              << " residual=" << gl3::format_residual(o.residual) << " tol=" << gl3::format_residual(c.tol)
              << " time=" << timing;
    if (!o.detail.empty()) std::cout << " " << o.detail;
    if (!error.empty()) std::cout << " error=" << error;
    std::cout << "\n";
  }
  if (!any) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return all ? 0 : 1;
}
