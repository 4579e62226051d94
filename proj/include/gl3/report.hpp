#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace gl3 {

inline constexpr const char* kSuiteVersion = "1.0.0";

struct VerificationReport {
  std::string check_name;
  std::map<std::string, std::string> parameters;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::int64_t runtime_ms = 0;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

inline VerificationReport make_report(std::string name, double residual, double tolerance,
                                      std::map<std::string, std::string> params = {}) {
  return {std::move(name), std::move(params), residual, tolerance, residual <= tolerance, 0};
}

inline void to_json(nlohmann::json& j, const VerificationReport& r) {
  j = nlohmann::json{{"check_name", r.check_name}, {"parameters", r.parameters}, {"max_residual", r.max_residual},
                     {"tolerance", r.tolerance},   {"pass", r.pass},             {"runtime_ms", r.runtime_ms}};
  // JSON has no infinity; a check that could not produce a residual is written as "inf".
  if (!std::isfinite(r.max_residual)) j["max_residual"] = "inf";
}

inline void from_json(const nlohmann::json& j, VerificationReport& r) {
  j.at("check_name").get_to(r.check_name);
  j.at("parameters").get_to(r.parameters);
  const auto& res = j.at("max_residual");
  r.max_residual = res.is_string() && res.get<std::string>() == "inf" ? std::numeric_limits<double>::infinity()
                                                                      : res.get<double>();
  j.at("tolerance").get_to(r.tolerance);
  j.at("pass").get_to(r.pass);
  j.at("runtime_ms").get_to(r.runtime_ms);
}

struct ReportDocument {
  std::string suite_version = kSuiteVersion;
  std::uint64_t seed = 0;
  std::vector<VerificationReport> reports;
};

inline nlohmann::json to_json_document(const ReportDocument& doc) {
  return {{"suite_version", doc.suite_version}, {"seed", doc.seed}, {"reports", doc.reports}};
}

inline ReportDocument parse_report(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ReportDocument doc;
  j.at("suite_version").get_to(doc.suite_version);
  j.at("seed").get_to(doc.seed);
  j.at("reports").get_to(doc.reports);
  return doc;
}

inline std::string format_residual(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << x;
  return os.str();
}

inline std::string render_text(const ReportDocument& doc) {
  std::ostringstream os;
  for (const auto& r : doc.reports) {
    os << (r.pass ? "PASS " : "FAIL ") << r.check_name << " residual=" << format_residual(r.max_residual)
       << " tol=" << format_residual(r.tolerance) << " runtime_ms=" << r.runtime_ms << '\n';
  }
  return os.str();
}

inline std::string render(const ReportDocument& doc, const std::string& format) {
  if (format == "json") return to_json_document(doc).dump(2) + "\n";
  if (format == "text") return render_text(doc);
  throw std::invalid_argument("unknown report format '" + format + "' (expected json or text)");
}

/// Writes to `path`, or to `out` when the path is empty or "-".
inline void emit_report(const ReportDocument& doc, const std::string& format, const std::string& path,
                        std::ostream& out) {
  const std::string body = render(doc, format);
  if (path.empty() || path == "-") {
    out << body;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open report file '" + path + "' for writing");
  f << body;
  if (!f) throw std::runtime_error("failed writing report file '" + path + "'");
}

}  // namespace gl3
