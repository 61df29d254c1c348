#pragma once

// Smooth Cesaro machinery: the step Psi, the bump psi, the polynomials V_n
// and W_N^Phi, the multiplier lambda_p and numerical multiplier checks.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "volterra_lab/report.hpp"
#include "volterra_lab/series.hpp"
#include "volterra_lab/space_norms.hpp"
#include "volterra_lab/volterra.hpp"

namespace vlab {

struct BumpFunction {
  std::function<double(double)> f;
  double lo = 0.0;  // support [lo, hi]; lo may be -inf for a step
  double hi = 0.0;
  std::string name;

  double operator()(double t) const { return f(t); }
};

namespace detail {
inline double mollifier_s(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
} // namespace detail

/// Psi(t) = s(2-t) / (s(2-t) + s(t-1)), s(x) = exp(-1/x) for x > 0.
inline double smooth_step_value(double t) {
  const double a = detail::mollifier_s(2.0 - t);
  const double b = detail::mollifier_s(t - 1.0);
  return a / (a + b);
}

inline BumpFunction smooth_step() {
  return {smooth_step_value, -std::numeric_limits<double>::infinity(), 2.0, "Psi"};
}

/// psi(t) = Psi(t/2) - Psi(t), supported in [1, 4].
inline double psi(double t) { return smooth_step_value(0.5 * t) - smooth_step_value(t); }

inline BumpFunction psi_bump() { return {psi, 1.0, 4.0, "psi"}; }

inline std::size_t v_n_top_index(std::size_t n) { return n == 0 ? 1 : (std::size_t{2} << n) - 1; }

/// V_0 = 1 + z; V_n has coefficient psi(k / 2^{n-1}) at k in [2^{n-1}, 2^{n+1} - 1].
inline PowerSeries v_n(std::size_t n, std::size_t degree_cap) {
  if (n >= 62) throw std::invalid_argument("v_n: n too large");
  if (v_n_top_index(n) > degree_cap) throw std::invalid_argument("v_n: top index exceeds degree_cap");
  if (n == 0) return PowerSeries{1.0, 1.0};
  const std::size_t lo = std::size_t{1} << (n - 1);
  const std::size_t hi = v_n_top_index(n);
  std::vector<cplx> c(hi + 1, cplx{});
  const double scale = static_cast<double>(lo);
  for (std::size_t k = lo; k <= hi; ++k) c[k] = psi(static_cast<double>(k) / scale);
  return PowerSeries(std::move(c));
}

struct MultiplierPoly {
  PowerSeries series;
  std::string phi;
  std::size_t n = 0;
};

/// W_n^Phi with coefficient Phi(k/n) for k in n * support(Phi).
inline MultiplierPoly w_phi(const BumpFunction& Phi, std::size_t n) {
  if (n < 1) throw std::invalid_argument("w_phi: n must be positive");
  if (!std::isfinite(Phi.lo) || !std::isfinite(Phi.hi) || Phi.lo < 0.0 || Phi.hi < Phi.lo) {
    throw std::invalid_argument("w_phi: Phi must have compact support in [0, inf)");
  }
  const double N = static_cast<double>(n);
  const auto k_lo = static_cast<std::size_t>(std::ceil(Phi.lo * N));
  const auto k_hi = static_cast<std::size_t>(std::floor(Phi.hi * N));
  std::vector<cplx> c(k_hi + 1, cplx{});
  for (std::size_t k = k_lo; k <= k_hi; ++k) c[k] = Phi(static_cast<double>(k) / N);
  return {PowerSeries(std::move(c)), Phi.name, n};
}

/// A_{Phi,m} = max|Phi| + max|Phi^{(m)}| sampled on 10^4 support points, the
/// derivative by an m-th central difference with step 2^{-10}.
inline double a_phi_m(const BumpFunction& Phi, unsigned m, std::size_t points = 10000) {
  if (!std::isfinite(Phi.lo) || !std::isfinite(Phi.hi)) throw std::invalid_argument("a_phi_m: support must be bounded");
  const double h = std::ldexp(1.0, -10);
  std::vector<double> binom(m + 1, 1.0);
  for (unsigned i = 1; i <= m; ++i) binom[i] = binom[i - 1] * static_cast<double>(m - i + 1) / static_cast<double>(i);
  double max_f = 0.0, max_d = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double t = Phi.lo + (Phi.hi - Phi.lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    max_f = std::max(max_f, std::abs(Phi(t)));
    double d = 0.0;
    for (unsigned k = 0; k <= m; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      d += sign * binom[k] * Phi(t + (0.5 * static_cast<double>(m) - static_cast<double>(k)) * h);
    }
    max_d = std::max(max_d, std::abs(d) / std::pow(h, static_cast<double>(m)));
  }
  return max_f + max_d;
}

/// ||W_N^Phi * f||_{H^p} / (A_{Phi,m} ||f||_{H^p}).
inline RatioRow cesaro_bound_check(const BumpFunction& Phi, unsigned m, double p, const PowerSeries& f, std::size_t N,
                                   const GridSpec& grid = default_grid()) {
  if (!(static_cast<double>(m) * p > 1.0)) throw std::invalid_argument("cesaro_bound_check: requires m p > 1");
  const auto W = w_phi(Phi, N);
  const double A = a_phi_m(Phi, m);
  RatioRow row;
  row.params = {{"phi", Phi.name}, {"m", m}, {"p", p}, {"N", N}, {"degree", f.degree()}, {"A", A}};
  row.lhs = norm(hadamard(W.series, f), SpaceId::hardy(p), grid).value;
  row.rhs = A * norm(f, SpaceId::hardy(p), grid).value;
  row.ratio = safe_ratio(row.lhs, row.rhs);
  return row;
}

/// lambda_p(z) = sum_{n<N} (w_{n,p}/w_{n+1,p}) z^{n+1}, with the ratio in
/// closed form (n+1+1/p)/(n+1).
inline PowerSeries lambda_p(double p, std::size_t N) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("lambda_p: p must lie in (0,1]");
  if (N < 1) throw std::invalid_argument("lambda_p: N must be positive");
  std::vector<cplx> c(N + 1, cplx{});
  for (std::size_t n = 0; n < N; ++n) {
    c[n + 1] = (static_cast<double>(n) + 1.0 + 1.0 / p) / (static_cast<double>(n) + 1.0);
  }
  return PowerSeries(std::move(c));
}

struct GrowthReport {
  std::vector<RatioRow> rows;  // lhs = (1-r) M_1(r, D lambda_p), rhs = 1
  double max = 0.0;
  double min = 0.0;
  double spread = 0.0;         // max / min
};

/// (1-r) M_1(r, D lambda_p), D the (n+1) multiplier, on the degree-N
/// truncation. The omitted tail is bounded through |coefficient m| <= (m+1)(1+1/p).
inline GrowthReport m1_growth_check(double p, const std::vector<double>& rgrid, std::size_t N = std::size_t{1} << 16) {
  if (rgrid.empty()) throw std::invalid_argument("m1_growth_check: rgrid must be nonempty");
  const PowerSeries D = frac_derivative(lambda_p(p, N), 1.0);
  GrowthReport rep;
  rep.min = std::numeric_limits<double>::infinity();
  const std::size_t M = fft::next_pow2(4 * (N + 1) + 1);
  for (double r : rgrid) {
    if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("m1_growth_check: radii must lie in [0,1)");
    const double m1 = integral_mean(D, r, 1.0, M);
    const double C = 1.0 + 1.0 / p;
    const double rn = std::pow(r, static_cast<double>(N + 1));
    const double tail = C * rn * ((static_cast<double>(N) + 2.0) / (1.0 - r) + r / ((1.0 - r) * (1.0 - r)));
    RatioRow row;
    row.params = {{"p", p}, {"r", r}, {"N", N}, {"angular_samples", M}, {"tail_bound", (1.0 - r) * tail}};
    row.lhs = (1.0 - r) * m1;
    row.rhs = 1.0;
    row.ratio = row.lhs;
    rep.max = std::max(rep.max, row.lhs);
    rep.min = std::min(rep.min, row.lhs);
    rep.rows.push_back(std::move(row));
  }
  rep.spread = safe_ratio(rep.max, rep.min);
  return rep;
}

/// LHS = ||Delta_j f * G_{g,z}||_{H^q};
/// RHS = ||Delta_j f_{conj z}||_{H^q} sum_n (n+1)|g(n+1)||z|^{n+1}/(n+2^{j-1}+1).
inline RatioRow prop31_check(const Symbol& g, const PowerSeries& f, std::size_t j, cplx z, double q,
                             const GridSpec& grid = default_grid()) {
  if (!(q > 1.0 && std::isfinite(q))) throw std::invalid_argument("prop31_check: q must lie in (1, inf)");
  if (j < 1) throw std::invalid_argument("prop31_check: j must be at least 1");
  if (!(std::abs(z) <= 1.0)) throw std::invalid_argument("prop31_check: |z| must not exceed 1");
  const auto [lo, hi] = dyadic_range(j);
  (void)lo;
  const auto G = kernel_slice(g, z, hi);
  const PowerSeries block = dyadic_block(f, j);
  const double lhs = norm(hadamard(block, G.series), SpaceId::hardy(q), grid).value;
  const double bn = norm(dyadic_block(dilate(f, std::conj(z)), j), SpaceId::hardy(q), grid).value;
  const auto b = g.b();
  const double rz = std::abs(z);
  const double half = std::ldexp(1.0, static_cast<int>(j) - 1);
  CompensatedSum<double> acc;
  double zn = rz;
  for (std::size_t n = 0; n < b.size(); ++n) {
    acc.add(std::abs(b[n]) * zn / (static_cast<double>(n) + half + 1.0));
    zn *= rz;
  }
  RatioRow row;
  row.params = {{"j", j}, {"z", {z.real(), z.imag()}}, {"q", q}, {"degree_f", f.degree()}};
  row.lhs = lhs;
  row.rhs = bn * acc.value();
  row.ratio = safe_ratio(row.lhs, row.rhs);
  return row;
}

} // namespace vlab
