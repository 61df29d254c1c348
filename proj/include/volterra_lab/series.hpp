#pragma once

// Truncated power series f(z) = sum_{n=0}^{deg} c_n z^n and the exact
// coefficient-level operations every other part of the library uses.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "volterra_lab/fft.hpp"

namespace vlab {

using cplx = std::complex<double>;

/// Dense, immutable-by-convention coefficient vector. Index n holds the n-th
/// Maclaurin coefficient. Always holds at least one coefficient.
class PowerSeries {
public:
  PowerSeries() : c_(1, cplx{}) {}

  explicit PowerSeries(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.assign(1, cplx{});
    for (const auto& v : c_) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw std::invalid_argument("PowerSeries: coefficients must be finite");
      }
    }
  }

  explicit PowerSeries(std::span<const double> real_coeffs)
      : PowerSeries(std::vector<cplx>(real_coeffs.begin(), real_coeffs.end())) {}

  PowerSeries(std::initializer_list<cplx> coeffs) : PowerSeries(std::vector<cplx>(coeffs)) {}

  static PowerSeries zero(std::size_t degree = 0) {
    return PowerSeries(std::vector<cplx>(degree + 1, cplx{}));
  }
  static PowerSeries monomial(std::size_t k, cplx value = 1.0) {
    std::vector<cplx> c(k + 1, cplx{});
    c[k] = value;
    return PowerSeries(std::move(c));
  }
  static PowerSeries ones(std::size_t degree) {
    return PowerSeries(std::vector<cplx>(degree + 1, cplx{1.0, 0.0}));
  }

  std::size_t degree() const { return c_.size() - 1; }
  std::size_t size() const { return c_.size(); }

  /// Coefficient n, zero beyond the stored degree.
  cplx operator[](std::size_t n) const { return n < c_.size() ? c_[n] : cplx{}; }

  std::span<const cplx> coeffs() const { return c_; }

  /// Largest index with a nonzero coefficient (0 for the zero series).
  std::size_t effective_degree() const {
    std::size_t d = c_.size() - 1;
    while (d > 0 && c_[d] == cplx{}) --d;
    return d;
  }

  bool is_constant() const { return effective_degree() == 0; }

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] != b[i]) return false;
    }
    return true;
  }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    std::vector<cplx> c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    return PowerSeries(std::move(c));
  }
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    std::vector<cplx> c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
    return PowerSeries(std::move(c));
  }
  friend PowerSeries operator*(cplx s, const PowerSeries& a) {
    std::vector<cplx> c(a.c_);
    for (auto& v : c) v *= s;
    return PowerSeries(std::move(c));
  }

private:
  std::vector<cplx> c_;
};

/// Horner evaluation. Precondition |z| <= 1 is not enforced for speed; the
/// algebra is valid anywhere.
inline cplx evaluate(const PowerSeries& f, cplx z) {
  const auto c = f.coeffs();
  cplx acc = c.back();
  for (std::size_t n = c.size() - 1; n-- > 0;) acc = acc * z + c[n];
  return acc;
}

/// Values f(r e^{2 pi i j / M}), j = 0..M-1, through an M-point DFT of the
/// dilated coefficients folded modulo M (equal to direct sampling for any M).
inline std::vector<cplx> evaluate_circle(const PowerSeries& f, double r, std::size_t M) {
  if (M < 1) throw std::invalid_argument("evaluate_circle: M must be at least 1");
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("evaluate_circle: r must lie in [0,1]");
  std::vector<cplx> folded(M, cplx{});
  const auto c = f.coeffs();
  double rn = 1.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    folded[n % M] += c[n] * rn;
    rn *= r;
  }
  return fft::dft(std::move(folded), +1);
}

/// Coefficient n of the result is (n+1) f(n+1).
inline PowerSeries derivative(const PowerSeries& f) {
  if (f.degree() == 0) return PowerSeries::zero();
  std::vector<cplx> c(f.degree());
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = static_cast<double>(n + 1) * f[n + 1];
  return PowerSeries(std::move(c));
}

/// int_0^z f; coefficient n+1 is f(n)/(n+1), constant term 0.
inline PowerSeries primitive(const PowerSeries& f) {
  std::vector<cplx> c(f.size() + 1, cplx{});
  for (std::size_t n = 0; n < f.size(); ++n) c[n + 1] = f[n] / static_cast<double>(n + 1);
  return PowerSeries(std::move(c));
}

inline PowerSeries cauchy_product(const PowerSeries& f, const PowerSeries& g) {
  std::vector<cplx> c(f.size() + g.size() - 1, cplx{});
  const auto a = f.coeffs();
  const auto b = g.coeffs();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == cplx{}) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return PowerSeries(std::move(c));
}

/// Coefficientwise product; degree min(deg f, deg g).
inline PowerSeries hadamard(const PowerSeries& f, const PowerSeries& g) {
  const std::size_t n = std::min(f.size(), g.size());
  std::vector<cplx> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = f[k] * g[k];
  return PowerSeries(std::move(c));
}

/// f_a(z) = f(a z).
inline PowerSeries dilate(const PowerSeries& f, cplx a) {
  if (std::abs(a) > 1.0 + 1e-15) throw std::invalid_argument("dilate: |a| must not exceed 1");
  std::vector<cplx> c(f.size());
  cplx an = 1.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    c[n] = f[n] * an;
    an *= a;
  }
  return PowerSeries(std::move(c));
}

/// D^beta f: coefficient n scaled by (n+1)^beta.
inline PowerSeries frac_derivative(const PowerSeries& f, double beta) {
  if (!std::isfinite(beta)) throw std::invalid_argument("frac_derivative: beta must be finite");
  std::vector<cplx> c(f.size());
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = std::pow(static_cast<double>(n + 1), beta) * f[n];
  return PowerSeries(std::move(c));
}

/// Index window [first, last] of dyadic block n. Block 0 holds {0, 1};
/// block n >= 1 holds [2^n, 2^{n+1} - 1]. Together they partition N_0.
inline std::pair<std::size_t, std::size_t> dyadic_range(std::size_t n) {
  if (n == 0) return {0, 1};
  return {std::size_t{1} << n, (std::size_t{2} << n) - 1};
}

/// Block index containing coefficient k.
inline std::size_t dyadic_index(std::size_t k) {
  if (k <= 1) return 0;
  std::size_t n = 0;
  while ((std::size_t{2} << n) <= k) ++n;
  return n;
}

inline PowerSeries dyadic_block(const PowerSeries& f, std::size_t n) {
  const auto [lo, hi] = dyadic_range(n);
  std::vector<cplx> c(std::min(hi, f.degree()) + 1, cplx{});
  for (std::size_t k = lo; k <= hi && k < f.size(); ++k) c[k] = f[k];
  return PowerSeries(std::move(c));
}

/// The dyadic indicator polynomial: 1 for n = 0, sum_{k=2^n}^{2^{n+1}-1} z^k
/// otherwise. Its H^p norm scales like 2^{n/p'}.
inline PowerSeries dyadic_indicator(std::size_t n) {
  if (n == 0) return PowerSeries{1.0};
  const auto [lo, hi] = dyadic_range(n);
  std::vector<cplx> c(hi + 1, cplx{});
  for (std::size_t k = lo; k <= hi; ++k) c[k] = 1.0;
  return PowerSeries(std::move(c));
}

/// sum |c_n|, an upper bound for sup over the closed disc.
inline double l1_norm(const PowerSeries& f) {
  double s = 0.0;
  for (const auto& v : f.coeffs()) s += std::abs(v);
  return s;
}

} // namespace vlab
