#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace edgecalc {

enum class CheckStatus { pass, fail, degenerate, warning };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::degenerate: return "degenerate";
    case CheckStatus::warning: return "warning";
  }
  return "?";
}

/// One verification record: a named check, the measured value, and the
/// tolerance it was held against.
struct CheckRecord {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ReportSummary {
  int passed = 0;
  int failed = 0;
  int degenerate = 0;
  int warnings = 0;
};

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace detail

/// Verification report: config echo, per-check records and summary counts.
/// Records are kept sorted by name so identical runs emit byte-identical
/// bodies (the wall-time field is the one exempted value).
struct Report {
  std::string command;
  std::map<std::string, std::string> config;
  std::vector<CheckRecord> records;
  double wall_seconds = 0.0;

  void add(CheckRecord rec) { records.push_back(std::move(rec)); }

  /// Pass/fail record against an absolute tolerance.
  void check(const std::string& name, double value, double tolerance,
             const std::string& detail = "") {
    add({name, value <= tolerance ? CheckStatus::pass : CheckStatus::fail,
         value, tolerance, detail});
  }

  /// Record for a strictly-positive requirement (ellipticity minima).
  void check_above(const std::string& name, double value, double threshold,
                   const std::string& detail = "") {
    add({name, value > threshold ? CheckStatus::pass : CheckStatus::fail,
         value, threshold, detail});
  }

  void sort_records() {
    std::stable_sort(records.begin(), records.end(),
                     [](const CheckRecord& a, const CheckRecord& b) {
                       return a.name < b.name;
                     });
  }

  ReportSummary summary() const {
    ReportSummary s;
    for (const auto& r : records) {
      switch (r.status) {
        case CheckStatus::pass: ++s.passed; break;
        case CheckStatus::fail: ++s.failed; break;
        case CheckStatus::degenerate: ++s.degenerate; break;
        case CheckStatus::warning: ++s.warnings; break;
      }
    }
    return s;
  }

  bool all_passed() const { return summary().failed == 0; }

  std::string to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    j["config"] = cfg;
    nlohmann::ordered_json recs = nlohmann::ordered_json::array();
    for (const auto& r : records) {
      nlohmann::ordered_json jr;
      jr["check"] = r.name;
      jr["status"] = to_string(r.status);
      jr["value"] = r.value;
      jr["tolerance"] = r.tolerance;
      jr["detail"] = r.detail;
      recs.push_back(jr);
    }
    j["records"] = recs;
    const ReportSummary s = summary();
    j["summary"] = {{"pass", s.passed},
                    {"fail", s.failed},
                    {"degenerate", s.degenerate},
                    {"warning", s.warnings}};
    j["wall_time_seconds"] = wall_seconds;
    return j.dump(2) + "\n";
  }

  /// One row per check: command, check, status, value, tolerance, detail.
  std::string to_csv() const {
    std::string out = "command,check,status,value,tolerance,detail\n";
    for (const auto& r : records) {
      out += detail::csv_escape(command);
      out += ',';
      out += detail::csv_escape(r.name);
      out += ',';
      out += to_string(r.status);
      out += ',';
      out += detail::format_double(r.value);
      out += ',';
      out += detail::format_double(r.tolerance);
      out += ',';
      out += detail::csv_escape(r.detail);
      out += '\n';
    }
    return out;
  }
};

}  // namespace edgecalc
