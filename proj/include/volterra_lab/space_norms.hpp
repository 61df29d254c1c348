#pragma once

// Norms and pairings of analytic function spaces on the unit disc, each
// evaluated on an explicit grid that travels with the result.
//
// Conventions: dA = dx dy / pi (normalised area), so for radial integrands
// int_D h dA = 2 int_0^1 (angular mean of h)(r) r dr.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "volterra_lab/fft.hpp"
#include "volterra_lab/quadrature.hpp"
#include "volterra_lab/series.hpp"
#include "volterra_lab/special.hpp"
#include "volterra_lab/summation.hpp"

namespace vlab {

enum class SpaceKind { Hp, Dp, HLp, HLinf, BlochAlpha, HinfAlpha, HinfLog, Hinf, BMOA };

inline const char* to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::Hp: return "Hp";
    case SpaceKind::Dp: return "Dp";
    case SpaceKind::HLp: return "HLp";
    case SpaceKind::HLinf: return "HLinf";
    case SpaceKind::BlochAlpha: return "BlochAlpha";
    case SpaceKind::HinfAlpha: return "HinfAlpha";
    case SpaceKind::HinfLog: return "HinfLog";
    case SpaceKind::Hinf: return "Hinf";
    case SpaceKind::BMOA: return "BMOA";
  }
  return "?";
}

inline SpaceKind space_kind_from_string(const std::string& s) {
  for (auto k : {SpaceKind::Hp, SpaceKind::Dp, SpaceKind::HLp, SpaceKind::HLinf, SpaceKind::BlochAlpha,
                 SpaceKind::HinfAlpha, SpaceKind::HinfLog, SpaceKind::Hinf, SpaceKind::BMOA}) {
    if (s == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown space: " + s);
}

/// A function space together with its parameter: p for Hp/Dp/HLp, alpha for
/// BlochAlpha/HinfAlpha, unused otherwise.
struct SpaceId {
  SpaceKind kind = SpaceKind::Hp;
  double param = 2.0;

  static SpaceId hardy(double p) { return checked({SpaceKind::Hp, p}); }
  static SpaceId dirichlet(double p) { return checked({SpaceKind::Dp, p}); }
  static SpaceId hardy_littlewood(double p) { return checked({SpaceKind::HLp, p}); }
  static SpaceId hl_inf() { return {SpaceKind::HLinf, 0.0}; }
  static SpaceId bloch(double alpha) { return checked({SpaceKind::BlochAlpha, alpha}); }
  static SpaceId growth(double alpha) { return checked({SpaceKind::HinfAlpha, alpha}); }
  static SpaceId log_growth() { return {SpaceKind::HinfLog, 0.0}; }
  static SpaceId bounded() { return {SpaceKind::Hinf, 0.0}; }
  static SpaceId bmoa() { return {SpaceKind::BMOA, 0.0}; }

  bool has_param() const {
    return kind == SpaceKind::Hp || kind == SpaceKind::Dp || kind == SpaceKind::HLp ||
           kind == SpaceKind::BlochAlpha || kind == SpaceKind::HinfAlpha;
  }

  void validate() const {
    if (has_param() && !(param > 0.0 && std::isfinite(param))) {
      throw std::invalid_argument(std::string("space ") + to_string(kind) + ": parameter must be positive and finite");
    }
  }

  std::string label() const {
    std::string s = to_string(kind);
    if (has_param()) s += "(" + std::to_string(param) + ")";
    return s;
  }

  friend bool operator==(const SpaceId&, const SpaceId&) = default;

private:
  static SpaceId checked(SpaceId s) {
    s.validate();
    return s;
  }
};

/// Radial quadrature: composite Gauss-Legendre on dyadic pieces in 1 - r.
struct RadialRule {
  std::size_t nodes_per_piece = 16;
  std::size_t depth = 14;
};

/// Discretisation for every quadrature and supremum estimate.
struct GridSpec {
  std::vector<double> radii;        // strictly increasing, all < 1
  std::size_t angular_count = 64;   // minimum angular samples
  std::vector<cplx> disc_points;    // optional explicit centres (BMOA)
  RadialRule radial;
  std::size_t oversample = 4;       // circle samples > oversample (deg+1)
  std::size_t sup_substeps = 4;     // extra radii between grid radii for suprema
  std::size_t bmoa_angles = 32;
  std::string label = "default";

  /// Radii 1 - 2^{-j}, j = 0..J.
  static std::vector<double> dyadic_radii(std::size_t J) {
    std::vector<double> r;
    for (std::size_t j = 0; j <= J; ++j) r.push_back(1.0 - std::ldexp(1.0, -static_cast<int>(j)));
    return r;
  }

  static GridSpec preset(const std::string& name) {
    GridSpec g;
    g.label = name;
    if (name == "coarse") {
      g.radial = {8, 8};
      g.radii = dyadic_radii(8);
      g.angular_count = 32;
      g.oversample = 2;
      g.sup_substeps = 2;
      g.bmoa_angles = 16;
    } else if (name == "default") {
      g.radii = dyadic_radii(14);
    } else if (name == "fine") {
      g.radial = {24, 20};
      g.radii = dyadic_radii(20);
      g.angular_count = 128;
      g.oversample = 8;
      g.sup_substeps = 8;
      g.bmoa_angles = 64;
    } else {
      throw std::invalid_argument("unknown grid preset: " + name);
    }
    return g;
  }

  void validate() const {
    if (radii.empty()) throw std::invalid_argument("GridSpec: radii must be nonempty");
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (!(radii[i] >= 0.0 && radii[i] < 1.0)) throw std::invalid_argument("GridSpec: radii must lie in [0,1)");
      if (i > 0 && !(radii[i] > radii[i - 1])) throw std::invalid_argument("GridSpec: radii must be strictly increasing");
    }
    if (angular_count < 4) throw std::invalid_argument("GridSpec: angular_count must be at least 4");
    if (radial.nodes_per_piece < 1) throw std::invalid_argument("GridSpec: radial rule needs nodes");
    if (oversample < 1) throw std::invalid_argument("GridSpec: oversample must be positive");
    for (const auto& a : disc_points) {
      if (!(std::abs(a) < 1.0)) throw std::invalid_argument("GridSpec: disc points must lie in the open disc");
    }
  }

  /// Angular sample count used for a series of the given degree.
  std::size_t samples_for(std::size_t degree) const {
    const std::size_t n = fft::next_pow2(oversample * (degree + 1) + 1);
    return std::max(angular_count, n);
  }
};

inline GridSpec default_grid() { return GridSpec::preset("default"); }

struct NormEstimate {
  double value = 0.0;
  SpaceId space;
  GridSpec grid;
  std::optional<double> tail_bound;
  bool exact = false;
  std::size_t angular_samples = 0;  // resolution actually used (0 if none)
};

inline nlohmann::ordered_json grid_to_json(const GridSpec& g) {
  nlohmann::ordered_json j;
  j["label"] = g.label;
  j["radii"] = g.radii;
  j["angular_count"] = g.angular_count;
  j["oversample"] = g.oversample;
  j["radial_rule"] = {{"name", "dyadic_gauss_legendre"},
                      {"nodes_per_piece", g.radial.nodes_per_piece},
                      {"depth", g.radial.depth}};
  j["sup_substeps"] = g.sup_substeps;
  j["bmoa_angles"] = g.bmoa_angles;
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& a : g.disc_points) pts.push_back({a.real(), a.imag()});
  j["disc_points"] = pts;
  return j;
}

inline nlohmann::ordered_json to_json(const NormEstimate& e) {
  nlohmann::ordered_json j;
  j["value"] = e.value;
  j["space"] = to_string(e.space.kind);
  j["param"] = e.space.has_param() ? nlohmann::ordered_json(e.space.param) : nlohmann::ordered_json(nullptr);
  j["grid"] = grid_to_json(e.grid);
  if (e.tail_bound && std::isfinite(*e.tail_bound)) {
    j["tail_bound"] = *e.tail_bound;
  } else {
    j["tail_bound"] = nullptr;
  }
  j["exact"] = e.exact;
  j["angular_samples"] = e.angular_samples;
  return j;
}

// ---------------------------------------------------------------------------

namespace detail {

inline double mean_abs_pow(const std::vector<cplx>& v, double p) {
  CompensatedSum<double> acc;
  if (p == 2.0) {
    for (const auto& x : v) acc.add(std::norm(x));
  } else {
    for (const auto& x : v) acc.add(std::pow(std::abs(x), p));
  }
  return acc.value() / static_cast<double>(v.size());
}

inline double max_abs(const std::vector<cplx>& v, std::size_t* where = nullptr) {
  double m = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > m) {
      m = a;
      arg = i;
    }
  }
  if (where) *where = arg;
  return m;
}

// Golden-section refinement of max |f(r e^{it})| around a sample maximum.
inline double refine_circle_max(const PowerSeries& f, double r, double t0, double h, double start) {
  auto val = [&](double t) { return std::abs(evaluate(f, std::polar(r, t))); };
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = t0 - h, b = t0 + h;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = val(c), fd = val(d);
  for (int it = 0; it < 60; ++it) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - phi * (b - a); fc = val(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + phi * (b - a); fd = val(d);
    }
  }
  return std::max({start, fc, fd});
}

// Grid radii plus geometric substeps in 1 - r between consecutive radii.
inline std::vector<double> sup_radii(const GridSpec& g) {
  std::vector<double> out;
  for (std::size_t i = 0; i < g.radii.size(); ++i) {
    out.push_back(g.radii[i]);
    if (i + 1 == g.radii.size()) break;
    const double s0 = 1.0 - g.radii[i], s1 = 1.0 - g.radii[i + 1];
    for (std::size_t t = 1; t < g.sup_substeps; ++t) {
      const double frac = static_cast<double>(t) / static_cast<double>(g.sup_substeps);
      out.push_back(1.0 - s0 * std::pow(s1 / s0, frac));
    }
  }
  return out;
}

} // namespace detail

/// Trapezoidal M_p(r, f) on M uniform angles; p = infinity gives the sample
/// maximum, which is a lower bound for the true maximum.
inline double integral_mean(const PowerSeries& f, double r, double p, std::size_t M) {
  if (std::isnan(p) || (std::isfinite(p) && !(p > 0.0))) throw std::invalid_argument("integral_mean: p must be positive");
  if (M < 4) throw std::invalid_argument("integral_mean: M must be at least 4");
  const auto v = evaluate_circle(f, r, M);
  if (std::isinf(p)) return detail::max_abs(v);
  return std::pow(detail::mean_abs_pow(v, p), 1.0 / p);
}

/// Sample maximum of |f| on |z| = r refined by a local golden-section search.
inline double circle_max(const PowerSeries& f, double r, std::size_t M) {
  const auto v = evaluate_circle(f, r, M);
  std::size_t arg = 0;
  const double m = detail::max_abs(v, &arg);
  if (m == 0.0 || f.degree() == 0) return m;
  const double h = 2.0 * std::numbers::pi / static_cast<double>(M);
  return detail::refine_circle_max(f, r, h * static_cast<double>(arg), h, m);
}

namespace detail {

// sup_{z in grid} |h(z)| weight(|z|) + offset, with angular maxima per radius.
template <typename Weight>
double radial_weighted_sup(const PowerSeries& h, const GridSpec& grid, Weight weight, std::size_t M) {
  double best = 0.0;
  for (double r : sup_radii(grid)) {
    const double w = weight(r);
    if (w == 0.0) continue;
    best = std::max(best, integral_mean(h, r, std::numeric_limits<double>::infinity(), M) * w);
  }
  return best;
}

inline double hl_norm(const PowerSeries& f, double p) {
  CompensatedSum<double> acc;
  const auto c = f.coeffs();
  for (std::size_t n = 0; n < c.size(); ++n) {
    const double a = std::abs(c[n]);
    if (a == 0.0) continue;
    acc.add(std::pow(a, p) * std::pow(static_cast<double>(n + 1), p - 2.0));
  }
  return std::pow(acc.value(), 1.0 / p);
}

inline double dirichlet_norm(const PowerSeries& f, double p, const GridSpec& grid, std::size_t& M_used) {
  const PowerSeries df = derivative(f);
  const std::size_t M = grid.samples_for(df.degree());
  M_used = M;
  const auto nodes = quad::dyadic_to_one(0.0, p - 1.0, grid.radial.depth, grid.radial.nodes_per_piece);
  CompensatedSum<double> acc;
  for (std::size_t i = 0; i < nodes.x.size(); ++i) {
    const double r = nodes.x[i];
    const double mp = mean_abs_pow(evaluate_circle(df, r, M), p);
    acc.add(nodes.w[i] * mp * r);
  }
  const double integral = 2.0 * acc.value();
  return std::pow(integral + std::pow(std::abs(f[0]), p), 1.0 / p);
}

// Normalised Carleson-square energy at centre a:
// (1-|a|)^{-1} int_{S(a)} |g'|^2 (1 - |z|^2) dA.
inline double carleson_energy(const PowerSeries& dg, cplx a, const GridSpec& grid, std::size_t M) {
  const double rho = std::abs(a);
  if (rho == 0.0) {
    const auto nodes = quad::dyadic_to_one(0.0, 0.0, grid.radial.depth, grid.radial.nodes_per_piece);
    CompensatedSum<double> acc;
    for (std::size_t i = 0; i < nodes.x.size(); ++i) {
      const double r = nodes.x[i];
      acc.add(nodes.w[i] * mean_abs_pow(evaluate_circle(dg, r, M), 2.0) * (1.0 - r * r) * r);
    }
    return 2.0 * acc.value();
  }
  const double phi = std::arg(a);
  const double half_width = 0.5 * (1.0 - rho);
  const auto radial = quad::dyadic_to_one(rho, 0.0, grid.radial.depth, std::max<std::size_t>(4, grid.radial.nodes_per_piece / 2));
  const auto& ang = quad::cached_gauss_legendre(std::max<std::size_t>(8, grid.radial.nodes_per_piece));
  CompensatedSum<double> acc;
  for (std::size_t i = 0; i < radial.x.size(); ++i) {
    const double r = radial.x[i];
    double arc = 0.0;
    for (std::size_t k = 0; k < ang.nodes.size(); ++k) {
      const double t = phi + half_width * ang.nodes[k];
      arc += ang.weights[k] * half_width * std::norm(evaluate(dg, std::polar(r, t)));
    }
    acc.add(radial.w[i] * arc * (1.0 - r * r) * r);
  }
  return acc.value() / std::numbers::pi / (1.0 - rho);
}

} // namespace detail

/// Norm of f in the given space, estimated on `grid`.
inline NormEstimate norm(const PowerSeries& f, const SpaceId& space, const GridSpec& grid = default_grid()) {
  space.validate();
  grid.validate();
  NormEstimate est;
  est.space = space;
  est.grid = grid;
  switch (space.kind) {
    case SpaceKind::Hp: {
      if (space.param == 2.0) {
        CompensatedSum<double> acc;
        for (const auto& c : f.coeffs()) acc.add(std::norm(c));
        est.value = std::sqrt(acc.value());
        est.exact = true;
        break;
      }
      // M_p(r, f) increases with r, so for a polynomial the sup sits at r = 1
      est.angular_samples = grid.samples_for(f.degree());
      est.value = integral_mean(f, 1.0, space.param, est.angular_samples);
      break;
    }
    case SpaceKind::Hinf: {
      est.angular_samples = grid.samples_for(f.degree());
      est.value = circle_max(f, 1.0, est.angular_samples);
      break;
    }
    case SpaceKind::Dp: {
      est.value = detail::dirichlet_norm(f, space.param, grid, est.angular_samples);
      break;
    }
    case SpaceKind::HLp: {
      est.value = detail::hl_norm(f, space.param);
      est.exact = true;
      break;
    }
    case SpaceKind::HLinf: {
      double m = 0.0;
      const auto c = f.coeffs();
      for (std::size_t n = 0; n < c.size(); ++n) m = std::max(m, std::abs(c[n]) * static_cast<double>(n + 1));
      est.value = m;
      est.exact = true;
      break;
    }
    case SpaceKind::BlochAlpha: {
      const PowerSeries df = derivative(f);
      est.angular_samples = grid.samples_for(df.degree());
      const double alpha = space.param;
      est.value = detail::radial_weighted_sup(df, grid, [alpha](double r) { return std::pow(1.0 - r * r, alpha); },
                                              est.angular_samples) +
                  std::abs(f[0]);
      break;
    }
    case SpaceKind::HinfAlpha: {
      est.angular_samples = grid.samples_for(f.degree());
      const double alpha = space.param;
      est.value = detail::radial_weighted_sup(f, grid, [alpha](double r) { return std::pow(1.0 - r * r, alpha); },
                                              est.angular_samples);
      break;
    }
    case SpaceKind::HinfLog: {
      est.angular_samples = grid.samples_for(f.degree());
      est.value = detail::radial_weighted_sup(f, grid, [](double r) { return 1.0 / std::log(std::numbers::e / (1.0 - r)); },
                                              est.angular_samples);
      break;
    }
    case SpaceKind::BMOA: {
      const PowerSeries dg = derivative(f);
      est.angular_samples = grid.samples_for(dg.degree());
      std::vector<cplx> centres{cplx{}};
      if (!grid.disc_points.empty()) {
        centres.insert(centres.end(), grid.disc_points.begin(), grid.disc_points.end());
      } else {
        for (double r : grid.radii) {
          if (r == 0.0) continue;
          for (std::size_t k = 0; k < grid.bmoa_angles; ++k) {
            centres.push_back(std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid.bmoa_angles)));
          }
        }
      }
      double best = 0.0;
      for (const auto& a : centres) best = std::max(best, detail::carleson_energy(dg, a, grid, est.angular_samples));
      est.value = std::sqrt(best + std::norm(f[0]));
      break;
    }
  }
  return est;
}

/// <f, g>_{H^2} = sum f(n) conj(g(n)).
inline cplx pairing_h2(const PowerSeries& f, const PowerSeries& g) {
  CompensatedSum<cplx> acc;
  const std::size_t n = std::min(f.size(), g.size());
  for (std::size_t k = 0; k < n; ++k) acc.add(f[k] * std::conj(g[k]));
  return acc.value();
}

/// Moment (beta+1) int_D |z|^{2n} (1-|z|^2)^beta dA = (beta+1) B(n+1, beta+1).
inline double a2beta_moment(std::size_t n, double beta) {
  if (!(beta > -1.0)) throw std::invalid_argument("a2beta_moment: beta must exceed -1");
  return std::exp(std::log(beta + 1.0) + special::log_beta(static_cast<double>(n) + 1.0, beta + 1.0));
}

/// Pairing of the standard weighted Bergman space A^2_beta.
inline cplx pairing_a2beta(const PowerSeries& f, const PowerSeries& g, double beta) {
  if (!(beta > -1.0)) throw std::invalid_argument("pairing_a2beta: beta must exceed -1");
  CompensatedSum<cplx> acc;
  const std::size_t n = std::min(f.size(), g.size());
  for (std::size_t k = 0; k < n; ++k) acc.add(f[k] * std::conj(g[k]) * a2beta_moment(k, beta));
  return acc.value();
}

/// Quadrature of 2 int_D f' conj(g') log(1/|z|) dA + f(0) conj(g(0)), which
/// equals the H^2 pairing (Green's formula).
inline cplx green_pairing(const PowerSeries& f, const PowerSeries& g, const GridSpec& grid = default_grid()) {
  grid.validate();
  const PowerSeries df = derivative(f), dg = derivative(g);
  const std::size_t M = grid.samples_for(df.degree() + dg.degree());
  const auto nodes = quad::graded_from_zero(std::max<std::size_t>(grid.radial.depth, 20), grid.radial.nodes_per_piece);
  CompensatedSum<cplx> acc;
  for (std::size_t i = 0; i < nodes.x.size(); ++i) {
    const double r = nodes.x[i];
    const auto a = evaluate_circle(df, r, M);
    const auto b = evaluate_circle(dg, r, M);
    CompensatedSum<cplx> mean;
    for (std::size_t k = 0; k < M; ++k) mean.add(a[k] * std::conj(b[k]));
    acc.add(nodes.w[i] * mean.value() / static_cast<double>(M) * std::log(1.0 / r) * r);
  }
  return 4.0 * acc.value() + f[0] * std::conj(g[0]);
}

/// w_{n,p} = int_0^1 r^{2n+1} (1-r^2)^{1/p - 1} dr = B(n+1, 1/p) / 2.
inline double moment_w(std::size_t n, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("moment_w: p must be positive");
  return 0.5 * special::beta(static_cast<double>(n) + 1.0, 1.0 / p);
}

} // namespace vlab
