#pragma once

// Symbol families used by the experiments, parsed from strings such as
// "power(1.5)", "logpower(1,2)", "lacunary(2)", "polynomial(0,1,0.25)" or
// "file(path/to/series.json)".

#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "volterra_lab/series.hpp"
#include "volterra_lab/series_io.hpp"
#include "volterra_lab/volterra.hpp"

namespace vlab {

enum class FamilyKind { power, logpower, lacunary, polynomial, file };

struct SymbolFamily {
  FamilyKind kind = FamilyKind::power;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  std::vector<cplx> coeffs;  // polynomial / file
  std::string path;

  static SymbolFamily power(double a) { return {FamilyKind::power, a}; }
  static SymbolFamily logpower(double a, double b) { return {FamilyKind::logpower, a, b}; }
  static SymbolFamily lacunary(double c) { return {FamilyKind::lacunary, 0.0, 0.0, c}; }
  static SymbolFamily polynomial(std::vector<cplx> c) {
    SymbolFamily f;
    f.kind = FamilyKind::polynomial;
    f.coeffs = std::move(c);
    return f;
  }

  /// Fixed-size families ignore the requested degree.
  bool fixed() const { return kind == FamilyKind::polynomial || kind == FamilyKind::file; }

  std::string label() const {
    std::ostringstream os;
    os.precision(10);
    switch (kind) {
      case FamilyKind::power: os << "power(" << a << ")"; break;
      case FamilyKind::logpower: os << "logpower(" << a << "," << b << ")"; break;
      case FamilyKind::lacunary: os << "lacunary(" << c << ")"; break;
      case FamilyKind::polynomial: {
        os << "polynomial(";
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
          os << (i ? "," : "") << coeffs[i].real();
          if (coeffs[i].imag() != 0.0) os << (coeffs[i].imag() > 0 ? "+" : "") << coeffs[i].imag() << "i";
        }
        os << ")";
        break;
      }
      case FamilyKind::file: os << "file(" << path << ")"; break;
    }
    return os.str();
  }

  /// Truncation at degree N.
  PowerSeries series(std::size_t N) const {
    switch (kind) {
      case FamilyKind::power: {
        std::vector<cplx> v(N + 1, cplx{});
        for (std::size_t n = 1; n <= N; ++n) v[n] = std::pow(static_cast<double>(n + 1), -a);
        return PowerSeries(std::move(v));
      }
      case FamilyKind::logpower: {
        std::vector<cplx> v(N + 1, cplx{});
        for (std::size_t n = 0; n <= N; ++n) {
          v[n] = std::pow(static_cast<double>(n + 1), -a) * std::pow(std::log(static_cast<double>(n + 2)), -b);
        }
        return PowerSeries(std::move(v));
      }
      case FamilyKind::lacunary: {
        std::vector<cplx> v(N + 1, cplx{});
        for (std::size_t j = 0; (std::size_t{1} << j) <= N; ++j) v[std::size_t{1} << j] = std::pow(static_cast<double>(j + 1), -c);
        return PowerSeries(std::move(v));
      }
      case FamilyKind::polynomial: return PowerSeries(coeffs);
      case FamilyKind::file: return read_series_file(path);
    }
    return PowerSeries{};
  }

  Symbol symbol(std::size_t N) const { return Symbol::detect(series(N)); }
};

namespace detail {

inline double parse_number(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw parse_error("family: not a number: '" + s + "'");
  }
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size() || !std::isfinite(v)) throw parse_error("family: not a finite number: '" + s + "'");
  return v;
}

inline std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  return out;
}

} // namespace detail

inline SymbolFamily parse_family(const std::string& text) {
  const auto open = text.find('(');
  if (open == std::string::npos || text.empty() || text.back() != ')') throw parse_error("family: expected name(args), got '" + text + "'");
  const std::string name = text.substr(0, open);
  const std::string inner = text.substr(open + 1, text.size() - open - 2);
  if (name == "file") {
    if (inner.empty()) throw parse_error("family: file() needs a path");
    SymbolFamily f;
    f.kind = FamilyKind::file;
    f.path = inner;
    return f;
  }
  std::vector<double> args;
  for (const auto& s : detail::split_args(inner)) args.push_back(detail::parse_number(s));
  auto want = [&](std::size_t n) {
    if (args.size() != n) throw parse_error("family: " + name + " takes " + std::to_string(n) + " argument(s)");
  };
  if (name == "power") {
    want(1);
    return SymbolFamily::power(args[0]);
  }
  if (name == "logpower") {
    want(2);
    return SymbolFamily::logpower(args[0], args[1]);
  }
  if (name == "lacunary") {
    want(1);
    return SymbolFamily::lacunary(args[0]);
  }
  if (name == "polynomial") {
    if (args.empty()) throw parse_error("family: polynomial needs coefficients");
    return SymbolFamily::polynomial(std::vector<cplx>(args.begin(), args.end()));
  }
  throw parse_error("family: unknown kind '" + name + "'");
}

/// Polynomial with independent standard complex normal coefficients.
template <typename Rng>
PowerSeries random_polynomial(Rng& rng, std::size_t degree) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<cplx> c(degree + 1);
  for (auto& v : c) v = cplx{nd(rng), nd(rng)};
  return PowerSeries(std::move(c));
}

/// Polynomial with independent uniform [0,1) real coefficients.
template <typename Rng>
PowerSeries random_nonneg_polynomial(Rng& rng, std::size_t degree) {
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  std::vector<cplx> c(degree + 1);
  for (auto& v : c) v = ud(rng);
  return PowerSeries(std::move(c));
}

} // namespace vlab
