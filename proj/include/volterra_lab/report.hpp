#pragma once

// Ratio rows and experiment reports, serialisable to JSON and CSV.

#include <cmath>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace vlab {

struct RatioRow {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

inline double safe_ratio(double lhs, double rhs) {
  if (rhs == 0.0) return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return lhs / rhs;
}

inline nlohmann::ordered_json to_json(const RatioRow& r) {
  nlohmann::ordered_json j = r.params;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["ratio"] = std::isfinite(r.ratio) ? nlohmann::ordered_json(r.ratio) : nlohmann::ordered_json("inf");
  return j;
}

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentReport {
  std::string id;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::vector<nlohmann::ordered_json> rows;
  nlohmann::ordered_json environment = nlohmann::ordered_json::object();
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<Check> checks;

  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  void check(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
};

inline nlohmann::ordered_json to_json(const ExperimentReport& r) {
  nlohmann::ordered_json j;
  j["experiment"] = r.id;
  j["parameters"] = r.parameters;
  j["environment"] = r.environment;
  j["rows"] = r.rows;
  j["summary"] = r.summary;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = checks;
  j["passed"] = r.all_passed();
  return j;
}

namespace detail {

inline std::string csv_cell(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  }
  if (v.is_number_float()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  if (v.is_primitive()) return v.dump();
  return csv_cell(nlohmann::ordered_json(v.dump()));
}

} // namespace detail

/// One CSV line per row; the header is the union of row keys in first-seen order.
inline void write_csv(std::ostream& os, const std::vector<nlohmann::ordered_json>& rows) {
  std::vector<std::string> cols;
  std::set<std::string> seen;
  for (const auto& r : rows) {
    for (auto it = r.begin(); it != r.end(); ++it) {
      if (seen.insert(it.key()).second) cols.push_back(it.key());
    }
  }
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) os << ",";
      if (r.contains(cols[i])) os << detail::csv_cell(r[cols[i]]);
    }
    os << "\n";
  }
}

} // namespace vlab
