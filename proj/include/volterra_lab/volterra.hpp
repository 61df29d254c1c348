#pragma once

// T_g(f)(z) = int_0^z f g', its H^2 kernel slices G_{g,z} (so that
// T_g(f)(z) = <f, G_{g,z}>_{H^2}) and dual-testing estimates.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include <json.hpp>

#include "volterra_lab/fft.hpp"
#include "volterra_lab/quadrature.hpp"
#include "volterra_lab/series.hpp"
#include "volterra_lab/series_io.hpp"
#include "volterra_lab/space_norms.hpp"
#include "volterra_lab/summation.hpp"

namespace vlab {

/// A symbol g. With nonneg set, every coefficient is real and >= 0.
class Symbol {
public:
  explicit Symbol(PowerSeries g, bool nonneg = false) : g_(std::move(g)), nonneg_(nonneg) {
    if (nonneg_) {
      for (const auto& c : g_.coeffs()) {
        if (c.real() < 0.0 || c.imag() != 0.0) {
          throw std::invalid_argument("Symbol: nonneg flag set but a coefficient is not a nonnegative real");
        }
      }
    }
  }

  /// Sets the nonneg flag when the coefficients allow it.
  static Symbol detect(PowerSeries g) {
    bool ok = true;
    for (const auto& c : g.coeffs()) ok = ok && c.real() >= 0.0 && c.imag() == 0.0;
    return Symbol(std::move(g), ok);
  }

  const PowerSeries& series() const { return g_; }
  bool nonneg() const { return nonneg_; }

  /// b_n = (n+1) g(n+1), n = 0..deg-1 (the coefficients of g').
  std::vector<cplx> b() const {
    std::vector<cplx> out(g_.degree());
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = static_cast<double>(n + 1) * g_[n + 1];
    return out;
  }

  /// sum |b_n|.
  double b_l1() const {
    double s = 0.0;
    for (const auto& v : b()) s += std::abs(v);
    return s;
  }

private:
  PowerSeries g_;
  bool nonneg_ = false;
};

inline PowerSeries apply_tg(const Symbol& g, const PowerSeries& f) {
  return primitive(cauchy_product(f, derivative(g.series())));
}

struct KernelSlice {
  PowerSeries series;
  cplx z;
  std::size_t K = 0;
  double tail_bound = 0.0;  // +inf when |z| = 1 (coefficients decay only like 1/k)
};

inline nlohmann::ordered_json to_json(const KernelSlice& s) {
  nlohmann::ordered_json j;
  j["series"] = series_to_json(s.series);
  j["z"] = {s.z.real(), s.z.imag()};
  j["K"] = s.K;
  if (std::isfinite(s.tail_bound)) {
    j["tail_bound"] = s.tail_bound;
  } else {
    j["tail_bound"] = nullptr;
  }
  return j;
}

inline std::size_t default_kernel_K(const Symbol& g) { return std::max<std::size_t>(4 * g.series().degree(), 4096); }

namespace detail {

// out[k] = sum_n c[n] a[n+k+1], k = 0..K.
inline std::vector<cplx> correlate(const std::vector<cplx>& c, const std::vector<cplx>& a, std::size_t K) {
  std::vector<cplx> out(K + 1, cplx{});
  const std::size_t D = c.size();
  if (D == 0) return out;
  if (static_cast<double>(D) * static_cast<double>(K + 1) <= 2e7) {
    for (std::size_t k = 0; k <= K; ++k) {
      CompensatedSum<cplx> acc;
      for (std::size_t n = 0; n < D; ++n) acc.add(c[n] * a[n + k + 1]);
      out[k] = acc.value();
    }
    return out;
  }
  // linear correlation through a zero-padded FFT convolution with reversed c
  const std::size_t L = fft::next_pow2(a.size() + D);
  std::vector<cplx> A(L, cplx{}), C(L, cplx{});
  std::copy(a.begin(), a.end(), A.begin());
  for (std::size_t n = 0; n < D; ++n) C[D - 1 - n] = c[n];
  fft::radix2(A, -1);
  fft::radix2(C, -1);
  for (std::size_t i = 0; i < L; ++i) A[i] *= C[i];
  fft::radix2(A, +1);
  const double inv = 1.0 / static_cast<double>(L);
  for (std::size_t k = 0; k <= K; ++k) out[k] = A[k + D] * inv;
  return out;
}

} // namespace detail

/// Coefficients G(k) = sum_n conj(b_n) conj(z)^{n+k+1}/(n+k+1), k = 0..K.
inline KernelSlice kernel_slice(const Symbol& g, cplx z, std::size_t K) {
  const double rz = std::abs(z);
  if (!(rz <= 1.0)) throw std::invalid_argument("kernel_slice: |z| must not exceed 1");
  const auto b = g.b();
  const std::size_t D = b.size();
  const cplx w = std::conj(z);
  std::vector<cplx> a(D + K + 1, cplx{});
  cplx wm = 1.0;
  for (std::size_t m = 1; m < a.size(); ++m) {
    wm *= w;
    a[m] = wm / static_cast<double>(m);
  }
  std::vector<cplx> cb(D);
  for (std::size_t n = 0; n < D; ++n) cb[n] = std::conj(b[n]);
  KernelSlice s;
  s.series = PowerSeries(detail::correlate(cb, a, K));
  s.z = z;
  s.K = K;
  if (rz == 0.0) {
    s.tail_bound = 0.0;
  } else if (rz < 1.0) {
    double t = 0.0;
    for (std::size_t n = 0; n < D; ++n) {
      if (b[n] == cplx{}) continue;
      const double m = static_cast<double>(n + K + 2);
      t += std::abs(b[n]) * std::pow(rz, m) / m;
    }
    s.tail_bound = t / (1.0 - rz);
  } else {
    bool zero = true;
    for (const auto& v : b) zero = zero && v == cplx{};
    s.tail_bound = zero ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return s;
}

/// Bound on ||G|| - ||G_K|| in space Y when one is available.
inline std::optional<double> slice_norm_tail(const Symbol& g, const KernelSlice& s, const SpaceId& Y) {
  const double rz = std::abs(s.z);
  const double A = g.b_l1();
  if (A == 0.0 || rz == 0.0) return 0.0;
  const double K = static_cast<double>(s.K);
  switch (Y.kind) {
    case SpaceKind::HLp: {
      // |G(k)| <= A |z|^{k+1}/(k+1), so sum_{k>K} |G(k)|^q (k+1)^{q-2} <= A^q sum_{m>=K+2} |z|^{qm}/m^2
      const double q = Y.param;
      double tail = 1.0 / (K + 1.0);
      if (rz < 1.0) tail = std::min(tail, std::pow(rz, q * (K + 2.0)) / ((K + 2.0) * (K + 2.0) * (1.0 - std::pow(rz, q))));
      return A * std::pow(tail, 1.0 / q);
    }
    case SpaceKind::HLinf: return A * std::pow(rz, K + 2.0);
    case SpaceKind::Hp:
      if (Y.param >= 1.0 && std::isfinite(s.tail_bound)) return s.tail_bound;
      return std::nullopt;
    case SpaceKind::Hinf:
    case SpaceKind::HinfAlpha:
    case SpaceKind::HinfLog:
      if (std::isfinite(s.tail_bound)) return s.tail_bound;
      return std::nullopt;
    default: return std::nullopt;
  }
}

struct DualTestResult {
  NormEstimate estimate;
  cplx argmax;
  std::vector<cplx> zgrid;
  std::vector<double> values;
};

inline nlohmann::ordered_json to_json(const DualTestResult& r) {
  nlohmann::ordered_json j = to_json(r.estimate);
  j["argmax"] = {r.argmax.real(), r.argmax.imag()};
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.zgrid.size(); ++i) {
    pts.push_back({{"z", {r.zgrid[i].real(), r.zgrid[i].imag()}}, {"value", r.values[i]}});
  }
  j["points"] = pts;
  return j;
}

/// Positive axis {1 - 2^{-j}} for nonneg symbols, radii x angles otherwise.
inline std::vector<cplx> default_zgrid(const Symbol& g, std::size_t J = 14, std::size_t angles = 64) {
  std::vector<cplx> z;
  for (std::size_t j = 1; j <= J; ++j) {
    const double r = 1.0 - std::ldexp(1.0, -static_cast<int>(j));
    if (g.nonneg()) {
      z.emplace_back(r, 0.0);
    } else {
      for (std::size_t k = 0; k < angles; ++k) {
        z.push_back(std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angles)));
      }
    }
  }
  return z;
}

namespace detail {

template <typename F>
void parallel_for(std::size_t n, F&& body) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t T = std::min<std::size_t>(hw, n);
  if (T <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(T);
  for (std::size_t t = 0; t < T; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += T) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

} // namespace detail

/// max over zgrid of ||kernel_slice(g, z, K)||_Y. Ties keep the first point.
inline DualTestResult dual_test(const Symbol& g, const SpaceId& Y, const std::vector<cplx>& zgrid, std::size_t K,
                                const GridSpec& grid = default_grid()) {
  if (zgrid.empty()) throw std::invalid_argument("dual_test: zgrid must be nonempty");
  for (const auto& z : zgrid) {
    if (!(std::abs(z) <= 1.0)) throw std::invalid_argument("dual_test: zgrid points must lie in the closed disc");
  }
  Y.validate();
  grid.validate();
  std::vector<NormEstimate> ests(zgrid.size());
  std::vector<std::optional<double>> tails(zgrid.size());
  detail::parallel_for(zgrid.size(), [&](std::size_t i) {
    const auto s = kernel_slice(g, zgrid[i], K);
    ests[i] = norm(s.series, Y, grid);
    tails[i] = slice_norm_tail(g, s, Y);
  });
  DualTestResult r;
  r.zgrid = zgrid;
  std::size_t best = 0;
  std::optional<double> tail = 0.0;
  for (std::size_t i = 0; i < zgrid.size(); ++i) {
    r.values.push_back(ests[i].value);
    if (ests[i].value > ests[best].value) best = i;
    if (tail && tails[i]) {
      tail = std::max(*tail, *tails[i]);
    } else {
      tail.reset();
    }
  }
  r.estimate = ests[best];
  r.estimate.exact = false;
  r.estimate.tail_bound = tail;
  r.argmax = zgrid[best];
  return r;
}

/// dual_test on real points of (0,1) for a nonneg symbol; also checks that
/// each slice is nonnegative and nonincreasing in k.
inline DualTestResult dual_test_positive(const Symbol& g, const SpaceId& Y, const std::vector<double>& xgrid, std::size_t K,
                                         const GridSpec& grid = default_grid()) {
  if (!g.nonneg()) throw std::invalid_argument("dual_test_positive: symbol must be nonneg");
  std::vector<cplx> z;
  for (double x : xgrid) {
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("dual_test_positive: points must lie in (0,1)");
    z.emplace_back(x, 0.0);
  }
  auto r = dual_test(g, Y, z, K, grid);
  for (double x : xgrid) {
    const auto s = kernel_slice(g, cplx{x, 0.0}, std::min<std::size_t>(K, 1 << 14));
    const auto c = s.series.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double tol = 1e-12 * std::abs(c[0]) + 1e-300;
      if (c[k].real() < -tol || std::abs(c[k].imag()) > tol || (k > 0 && c[k].real() > c[k - 1].real() + tol)) {
        throw std::logic_error("dual_test_positive: kernel slice is not nonnegative and nonincreasing");
      }
    }
  }
  return r;
}

/// max over testset of ||T_g f||_{H^inf} / ||f||_X, a lower bound for the operator norm.
inline double opnorm_lower(const Symbol& g, const SpaceId& X, const std::vector<PowerSeries>& testset,
                           const GridSpec& grid = default_grid()) {
  if (testset.empty()) throw std::invalid_argument("opnorm_lower: testset must be nonempty");
  std::vector<double> ratios(testset.size());
  detail::parallel_for(testset.size(), [&](std::size_t i) {
    const double nx = norm(testset[i], X, grid).value;
    if (!(nx > 0.0)) throw std::invalid_argument("opnorm_lower: test function with zero norm");
    ratios[i] = norm(apply_tg(g, testset[i]), SpaceId::bounded(), grid).value / nx;
  });
  return *std::max_element(ratios.begin(), ratios.end());
}

/// sup over zgrid of 2 int_R^1 M_{p'}(r, G')^{p'} (1-r)^{p'-1} r dr.
inline double tail_energy(const Symbol& g, double p, double R, const std::vector<cplx>& zgrid, std::size_t K,
                          const GridSpec& grid = default_grid()) {
  if (!(p > 1.0 && std::isfinite(p))) throw std::invalid_argument("tail_energy: p must lie in (1, inf)");
  if (!(R > 0.0 && R < 1.0)) throw std::invalid_argument("tail_energy: R must lie in (0,1)");
  if (zgrid.empty()) throw std::invalid_argument("tail_energy: zgrid must be nonempty");
  const double q = p / (p - 1.0);
  const auto nodes = quad::dyadic_to_one(R, q - 1.0, grid.radial.depth, grid.radial.nodes_per_piece);
  std::vector<double> vals(zgrid.size());
  detail::parallel_for(zgrid.size(), [&](std::size_t i) {
    const auto dG = derivative(kernel_slice(g, zgrid[i], K).series);
    const std::size_t M = grid.samples_for(dG.degree());
    CompensatedSum<double> acc;
    for (std::size_t k = 0; k < nodes.x.size(); ++k) {
      const double r = nodes.x[k];
      acc.add(nodes.w[k] * detail::mean_abs_pow(evaluate_circle(dG, r, M), q) * r);
    }
    vals[i] = 2.0 * acc.value();
  });
  return *std::max_element(vals.begin(), vals.end());
}

} // namespace vlab
