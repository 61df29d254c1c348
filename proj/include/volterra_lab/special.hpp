#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace vlab::special {

namespace detail {
// lgamma(x) - [(x - 1/2) log x - x + log(2 pi)/2], Stirling series for x >= 10
inline double stirling_correction(double x) {
  const double x2 = 1.0 / (x * x);
  return (1.0 / 12.0 - x2 * (1.0 / 360.0 - x2 * (1.0 / 1260.0 - x2 * (1.0 / 1680.0 - x2 / 1188.0)))) / x;
}
} // namespace detail

/// log B(a, b). The large argument goes through the Stirling series so the
/// difference lgamma(a) - lgamma(a+b) keeps full relative accuracy.
inline double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("log_beta: arguments must be positive");
  if (a < b) std::swap(a, b);
  if (a < 10.0) return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double diff = -(a - 0.5) * std::log1p(b / a) - b * std::log(a + b) + b + detail::stirling_correction(a) -
                      detail::stirling_correction(a + b);
  return std::lgamma(b) + diff;
}

inline double beta(double a, double b) { return std::exp(log_beta(a, b)); }

inline constexpr std::size_t kHarmonicDirectLimit = 10000;

/// H_n = sum_{k=1}^n 1/k. Direct summation (smallest terms first) below
/// 10^4, asymptotic expansion above.
inline double harmonic(std::size_t n) {
  if (n == 0) return 0.0;
  if (n < kHarmonicDirectLimit) {
    double s = 0.0;
    for (std::size_t k = n; k >= 1; --k) s += 1.0 / static_cast<double>(k);
    return s;
  }
  const double x = static_cast<double>(n);
  const double x2 = 1.0 / (x * x);
  // ln n + gamma + 1/(2n) - sum B_{2k}/(2k n^{2k})
  const double series = x2 * (1.0 / 12.0 - x2 * (1.0 / 120.0 - x2 * (1.0 / 252.0 - x2 * (1.0 / 240.0))));
  return std::log(x) + std::numbers::egamma + 0.5 / x - series;
}

/// int_0^1 t^n log(e/(1-t)) dt = (1 + H_{n+1})/(n+1).
inline double log_weight_moment(std::size_t n) {
  return (1.0 + harmonic(n + 1)) / static_cast<double>(n + 1);
}

} // namespace vlab::special
