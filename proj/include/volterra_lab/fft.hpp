#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace vlab::fft {

using cplx = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// e^{sign * 2 pi i k / n}, angle formed from the exact ratio k/n
inline cplx unit_root(long long k, std::size_t n, int sign) {
  const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                       static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

/// In-place iterative radix-2 transform: a_j <- sum_m a_m e^{sign 2 pi i jm/n}.
inline void radix2(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  if (!is_pow2(n)) throw std::invalid_argument("radix2: length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<cplx> tw(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) tw[k] = unit_root(static_cast<long long>(k), n, sign);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + half] * tw[k * stride];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

namespace detail {

inline std::vector<cplx> naive_dft(const std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx s{};
    for (std::size_t m = 0; m < n; ++m) {
      s += a[m] * unit_root(static_cast<long long>((j * m) % n), n, sign);
    }
    out[j] = s;
  }
  return out;
}

// Chirp-z for arbitrary n, built on power-of-two convolutions.
inline std::vector<cplx> bluestein(const std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  const std::size_t m = next_pow2(2 * n - 1);
  std::vector<cplx> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the angle argument small
    const auto k2 = static_cast<long long>((k * k) % (2 * n));
    chirp[k] = unit_root(k2, 2 * n, sign);
  }
  std::vector<cplx> x(m), y(m);
  for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
  y[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) y[k] = y[m - k] = std::conj(chirp[k]);
  radix2(x, -1);
  radix2(y, -1);
  for (std::size_t k = 0; k < m; ++k) x[k] *= y[k];
  radix2(x, 1);
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = x[k] * chirp[k] / static_cast<double>(m);
  return out;
}

} // namespace detail

/// Unnormalised DFT of any length: out_j = sum_m a_m e^{sign 2 pi i jm/n}.
inline std::vector<cplx> dft(std::vector<cplx> a, int sign) {
  const std::size_t n = a.size();
  if (n == 0) return a;
  if (is_pow2(n)) {
    radix2(a, sign);
    return a;
  }
  if (n <= 256) return detail::naive_dft(a, sign);
  return detail::bluestein(a, sign);
}

} // namespace vlab::fft
