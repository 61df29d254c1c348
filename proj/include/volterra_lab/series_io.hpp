#pragma once

// Series text format: a JSON array whose entry n is coefficient n, either
// [re, im] or a bare real. A whitespace format (one "re [im]" per line,
// '#' comments) is accepted on input as well.

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "volterra_lab/series.hpp"

namespace vlab {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline nlohmann::json series_to_json(const PowerSeries& f) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : f.coeffs()) arr.push_back({c.real(), c.imag()});
  return arr;
}

inline PowerSeries series_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw parse_error("series: expected a nonempty JSON array");
  std::vector<cplx> c;
  c.reserve(j.size());
  for (std::size_t n = 0; n < j.size(); ++n) {
    const auto& e = j[n];
    if (e.is_number()) {
      c.emplace_back(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      c.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else {
      throw parse_error("series: entry " + std::to_string(n) + " is neither a real nor a [re, im] pair");
    }
    if (!std::isfinite(c.back().real()) || !std::isfinite(c.back().imag())) {
      throw parse_error("series: entry " + std::to_string(n) + " is not finite");
    }
  }
  return PowerSeries(std::move(c));
}

inline PowerSeries parse_series(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw parse_error("series: empty input");
  if (text[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw parse_error(std::string("series: malformed JSON: ") + e.what());
    }
    return series_from_json(j);
  }
  std::vector<cplx> c;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    if (!(ls >> re)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw parse_error("series: cannot parse line " + std::to_string(lineno));
    }
    if (!(ls >> im)) im = 0.0;
    std::string rest;
    if (ls >> rest) throw parse_error("series: trailing tokens on line " + std::to_string(lineno));
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw parse_error("series: non-finite value on line " + std::to_string(lineno));
    }
    c.emplace_back(re, im);
  }
  if (c.empty()) throw parse_error("series: no coefficients found");
  return PowerSeries(std::move(c));
}

inline PowerSeries read_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("series: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_series(ss.str());
}

inline std::string format_series(const PowerSeries& f) { return series_to_json(f).dump(); }

} // namespace vlab
