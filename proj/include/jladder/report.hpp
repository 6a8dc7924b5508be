#pragma once

// Verification records and their CSV / JSON serialization.
//
// CSV carries the records only, one per row:
//
//   label,T,U,l,n,lhs,rhs,ratio,est_error
//
// with every real printed as %.17g and '\n' line endings, so equal reports
// give byte-identical files. JSON carries the whole report (meta, records,
// checks); non-finite reals are written as null.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>  // vendored nlohmann/json

#include "errors.hpp"

namespace jladder {

struct RatioRecord {
  std::string label;
  double T = 0.0;
  double U = 0.0;
  int l = 0;
  int n = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double est_error = 0.0;  // relative, propagated from the quadratures

  bool operator==(const RatioRecord&) const = default;
};

inline RatioRecord make_record(std::string label, double big_t, double u, int l, int n, double lhs, double rhs,
                               double est_error) {
  const double ratio = rhs != 0.0 ? lhs / rhs : std::numeric_limits<double>::quiet_NaN();
  return {std::move(label), big_t, u, l, n, lhs, rhs, ratio, est_error};
}

/// One pass/fail statement about a report. Hard checks are exact properties;
/// soft ones are desk-scale asymptotics and trends.
struct ReportCheck {
  std::string name;
  std::string family;
  bool hard = false;
  bool passed = false;
  std::string detail;

  bool operator==(const ReportCheck&) const = default;
};

struct ReportMeta {
  std::string tool_version;
  std::string suite;
  std::string config_hash;
  std::string ladder_cache_key;
  std::string started_utc;
  std::string finished_utc;

  bool operator==(const ReportMeta&) const = default;
};

struct ExperimentReport {
  static constexpr int kFormatVersion = 1;
  int format_version = kFormatVersion;
  ReportMeta meta;
  std::vector<RatioRecord> records;
  std::vector<ReportCheck> checks;

  void check(std::string name, std::string family, bool hard, bool passed, std::string detail = {}) {
    checks.push_back({std::move(name), std::move(family), hard, passed, std::move(detail)});
  }
  [[nodiscard]] bool hard_ok() const {
    for (const auto& c : checks) {
      if (c.hard && !c.passed) return false;
    }
    return true;
  }
  [[nodiscard]] bool soft_ok() const {
    for (const auto& c : checks) {
      if (!c.hard && !c.passed) return false;
    }
    return true;
  }
  void append(const ExperimentReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

// Records compare equal when every real matches bit for bit or both are NaN.
inline bool same_values(const RatioRecord& a, const RatioRecord& b) {
  auto eq = [](double x, double y) { return (std::isnan(x) && std::isnan(y)) || x == y; };
  return a.label == b.label && eq(a.T, b.T) && eq(a.U, b.U) && a.l == b.l && a.n == b.n && eq(a.lhs, b.lhs) &&
         eq(a.rhs, b.rhs) && eq(a.ratio, b.ratio) && eq(a.est_error, b.est_error);
}

inline bool same_values(const ExperimentReport& a, const ExperimentReport& b) {
  if (a.format_version != b.format_version || !(a.meta == b.meta) || !(a.checks == b.checks)) return false;
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    if (!same_values(a.records[i], b.records[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr const char* kCsvHeader = "label,T,U,l,n,lhs,rhs,ratio,est_error";

namespace detail {

inline std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double parse_real(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  // strtod rather than stod: subnormals must parse, not throw
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw FormatError("csv: bad real '" + s + "'");
  return v;
}

inline int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw FormatError("csv: bad integer '" + s + "'");
  }
  if (used != s.size()) throw FormatError("csv: bad integer '" + s + "'");
  return v;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (quoted) throw FormatError("csv: unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace detail

inline void write_csv(std::ostream& out, const std::vector<RatioRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << detail::csv_field(r.label) << ',' << detail::format_real(r.T) << ',' << detail::format_real(r.U) << ','
        << r.l << ',' << r.n << ',' << detail::format_real(r.lhs) << ',' << detail::format_real(r.rhs) << ','
        << detail::format_real(r.ratio) << ',' << detail::format_real(r.est_error) << '\n';
  }
}

inline std::string to_csv(const std::vector<RatioRecord>& records) {
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

inline std::vector<RatioRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw FormatError("csv: missing or unexpected header");
  std::vector<RatioRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // a quoted field may span lines
    std::string more;
    while (std::count(line.begin(), line.end(), '"') % 2 != 0 && std::getline(in, more)) line += '\n' + more;
    const auto f = detail::split_csv_line(line);
    if (f.size() != 9) throw FormatError("csv: expected 9 fields, got " + std::to_string(f.size()));
    records.push_back({f[0], detail::parse_real(f[1]), detail::parse_real(f[2]), detail::parse_int(f[3]),
                       detail::parse_int(f[4]), detail::parse_real(f[5]), detail::parse_real(f[6]),
                       detail::parse_real(f[7]), detail::parse_real(f[8])});
  }
  return records;
}

inline std::vector<RatioRecord> from_csv(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline nlohmann::json real_json(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

inline double json_real(const nlohmann::json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) throw FormatError("json: expected a number");
  return j.get<double>();
}

}  // namespace detail

inline nlohmann::json to_json_value(const ExperimentReport& report) {
  nlohmann::json j;
  j["format_version"] = report.format_version;
  j["meta"] = {{"tool_version", report.meta.tool_version},     {"suite", report.meta.suite},
               {"config_hash", report.meta.config_hash},       {"ladder_cache_key", report.meta.ladder_cache_key},
               {"started_utc", report.meta.started_utc},       {"finished_utc", report.meta.finished_utc}};
  auto& recs = j["records"] = nlohmann::json::array();
  for (const auto& r : report.records) {
    recs.push_back({{"label", r.label},
                    {"T", detail::real_json(r.T)},
                    {"U", detail::real_json(r.U)},
                    {"l", r.l},
                    {"n", r.n},
                    {"lhs", detail::real_json(r.lhs)},
                    {"rhs", detail::real_json(r.rhs)},
                    {"ratio", detail::real_json(r.ratio)},
                    {"est_error", detail::real_json(r.est_error)}});
  }
  auto& checks = j["checks"] = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back(
        {{"name", c.name}, {"family", c.family}, {"hard", c.hard}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return j;
}

inline std::string to_json(const ExperimentReport& report) { return to_json_value(report).dump(2) + "\n"; }

inline ExperimentReport from_json(const std::string& text) {
  ExperimentReport report;
  try {
    const auto j = nlohmann::json::parse(text);
    report.format_version = j.at("format_version").get<int>();
    if (report.format_version != ExperimentReport::kFormatVersion) throw FormatError("json: unsupported format_version");
    const auto& m = j.at("meta");
    report.meta = {m.at("tool_version").get<std::string>(),     m.at("suite").get<std::string>(),
                   m.at("config_hash").get<std::string>(),      m.at("ladder_cache_key").get<std::string>(),
                   m.at("started_utc").get<std::string>(),      m.at("finished_utc").get<std::string>()};
    for (const auto& r : j.at("records")) {
      report.records.push_back({r.at("label").get<std::string>(), detail::json_real(r.at("T")),
                                detail::json_real(r.at("U")), r.at("l").get<int>(), r.at("n").get<int>(),
                                detail::json_real(r.at("lhs")), detail::json_real(r.at("rhs")),
                                detail::json_real(r.at("ratio")), detail::json_real(r.at("est_error"))});
    }
    for (const auto& c : j.at("checks")) {
      report.checks.push_back({c.at("name").get<std::string>(), c.at("family").get<std::string>(),
                               c.at("hard").get<bool>(), c.at("passed").get<bool>(), c.at("detail").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("json: ") + e.what());
  }
  return report;
}

}  // namespace jladder
