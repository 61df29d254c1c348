#pragma once

// Coefficient criteria for boundedness of T_g : X -> H^inf, with truncation
// certificates, verdicts, and family-level growth-trend detection.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "volterra_lab/quadrature.hpp"
#include "volterra_lab/series.hpp"
#include "volterra_lab/space_norms.hpp"
#include "volterra_lab/special.hpp"
#include "volterra_lab/summation.hpp"
#include "volterra_lab/volterra.hpp"

namespace vlab {

enum class CriterionKind { Qp, Q1, QlogSum, QlogInt, ConstantOnly };
enum class Verdict { bounded, unbounded, inconclusive };

inline const char* to_string(CriterionKind k) {
  switch (k) {
    case CriterionKind::Qp: return "Qp";
    case CriterionKind::Q1: return "Q1";
    case CriterionKind::QlogSum: return "QlogSum";
    case CriterionKind::QlogInt: return "QlogInt";
    case CriterionKind::ConstantOnly: return "ConstantOnly";
  }
  return "?";
}

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::bounded: return "bounded";
    case Verdict::unbounded: return "unbounded";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct CriterionReport {
  CriterionKind kind = CriterionKind::Qp;
  std::optional<double> p;
  double value = 0.0;
  std::optional<double> tail_bound;
  std::size_t K_max = 0;
  Verdict verdict = Verdict::inconclusive;
  std::string rule;                // which characterisation decided the verdict
  bool sufficient_only = false;    // computed with |g(n)| for a general symbol
  nlohmann::ordered_json evidence = nlohmann::ordered_json::array();
};

inline nlohmann::ordered_json to_json(const CriterionReport& r) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(r.kind);
  j["p"] = r.p ? nlohmann::ordered_json(*r.p) : nlohmann::ordered_json(nullptr);
  j["value"] = std::isfinite(r.value) ? nlohmann::ordered_json(r.value) : nlohmann::ordered_json("inf");
  j["tail_bound"] = r.tail_bound ? nlohmann::ordered_json(*r.tail_bound) : nlohmann::ordered_json(nullptr);
  j["K_max"] = r.K_max;
  j["verdict"] = to_string(r.verdict);
  j["rule"] = r.rule;
  j["sufficient_only"] = r.sufficient_only;
  j["evidence"] = r.evidence;
  return j;
}

namespace detail {

// Real nonnegative b_n = (n+1)|g(n+1)|; sets `general` when |.| was needed.
inline std::vector<double> criterion_b(const Symbol& g, bool& general) {
  general = !g.nonneg();
  const auto b = g.b();
  std::vector<double> out(b.size());
  for (std::size_t n = 0; n < b.size(); ++n) out[n] = g.nonneg() ? b[n].real() : std::abs(b[n]);
  return out;
}

inline double inner_sum(const std::vector<double>& b, std::size_t k) {
  CompensatedSum<double> acc;
  for (std::size_t n = 0; n < b.size(); ++n) {
    if (b[n] != 0.0) acc.add(b[n] / static_cast<double>(n + k + 1));
  }
  return acc.value();
}

inline void require_nonneg(const Symbol& g, const char* who) {
  if (!g.nonneg()) throw std::invalid_argument(std::string(who) + ": symbol must be nonneg");
}

} // namespace detail

/// S(k) = sum_n (n+1) g(n+1) / (n+k+1).
inline double inner_sum(const Symbol& g, std::size_t k) {
  detail::require_nonneg(g, "inner_sum");
  bool general = false;
  return detail::inner_sum(detail::criterion_b(g, general), k);
}

/// sum_{k<=K_max} (k+1)^{p'-2} S(k)^{p'} with tail certificate A^{p'}/(K_max+1).
/// General symbols are accepted with |g(n)| and flagged sufficient_only.
inline CriterionReport q_p(const Symbol& g, double p, std::size_t K_max) {
  if (!(p > 1.0 && std::isfinite(p))) throw std::invalid_argument("q_p: p must lie in (1, inf)");
  CriterionReport r;
  r.kind = CriterionKind::Qp;
  r.p = p;
  r.K_max = K_max;
  r.rule = "coefficient_sum_qp";
  const double q = p / (p - 1.0);
  const auto b = detail::criterion_b(g, r.sufficient_only);
  double A = 0.0;
  for (double v : b) A += v;
  CompensatedSum<double> acc;
  std::size_t next_mark = 1;
  for (std::size_t k = 0; k <= K_max; ++k) {
    const double s = detail::inner_sum(b, k);
    const double k1 = static_cast<double>(k + 1);
    if (s > 0.0) acc.add(std::pow(k1 * s, q) / (k1 * k1));
    if (k + 1 == next_mark || k == K_max) {
      r.evidence.push_back({{"k", k}, {"partial", acc.value()}});
      next_mark *= 4;
    }
  }
  r.value = acc.value();
  r.tail_bound = std::pow(A, q) / static_cast<double>(K_max + 1);
  r.verdict = Verdict::bounded;
  return r;
}

/// Limit of (k+1) S(k), which equals A = sum_n (n+1) g(n+1) for a truncated
/// symbol; the nondecreasing sequence is recorded as evidence.
inline CriterionReport q_one(const Symbol& g, std::size_t K_max) {
  CriterionReport r;
  r.kind = CriterionKind::Q1;
  r.p = 1.0;
  r.K_max = K_max;
  r.rule = "coefficient_sup_q1";
  const auto b = detail::criterion_b(g, r.sufficient_only);
  CompensatedSum<double> A;
  for (double v : b) A.add(v);
  std::size_t k = 0;
  double last = 0.0;
  bool monotone = true;
  while (true) {
    const double t = static_cast<double>(k + 1) * detail::inner_sum(b, k);
    monotone = monotone && t >= last * (1.0 - 1e-14);
    last = t;
    r.evidence.push_back({{"k", k}, {"term", t}});
    if (k >= K_max) break;
    k = std::min(K_max, k == 0 ? std::size_t{1} : 2 * k);
  }
  r.value = A.value();
  r.tail_bound = r.value - last;
  r.evidence.push_back({{"monotone", monotone}, {"limit", r.value}});
  r.verdict = Verdict::bounded;
  return r;
}

/// sum_n g(n+1) log(n+2), exact over the stored coefficients.
inline CriterionReport q_log_sum(const Symbol& g) {
  CriterionReport r;
  r.kind = CriterionKind::QlogSum;
  r.rule = "log_coefficient_sum";
  bool general = !g.nonneg();
  r.sufficient_only = general;
  const auto& s = g.series();
  CompensatedSum<double> acc;
  for (std::size_t n = 0; n + 1 < s.size(); ++n) {
    const double c = general ? std::abs(s[n + 1]) : s[n + 1].real();
    if (c != 0.0) acc.add(c * std::log(static_cast<double>(n + 2)));
  }
  r.value = acc.value();
  r.tail_bound = 0.0;
  r.K_max = s.degree();
  r.verdict = Verdict::bounded;
  return r;
}

/// int_0^1 M_inf(r, g') log(e/(1-r)) dr. Closed form through harmonic numbers
/// for nonneg symbols, dyadic quadrature of sampled maxima otherwise.
inline CriterionReport q_log_integral(const Symbol& g, const GridSpec& grid = default_grid()) {
  CriterionReport r;
  r.kind = CriterionKind::QlogInt;
  r.rule = "log_growth_integral";
  const auto& s = g.series();
  r.K_max = s.degree();
  if (g.nonneg()) {
    CompensatedSum<double> acc;
    for (std::size_t n = 0; n + 1 < s.size(); ++n) {
      const double c = s[n + 1].real();
      if (c != 0.0) acc.add(c * (1.0 + special::harmonic(n + 1)));
    }
    r.value = acc.value();
    r.tail_bound = 0.0;
    r.evidence.push_back({{"method", "harmonic_closed_form"}});
  } else {
    const PowerSeries dg = derivative(s);
    const std::size_t M = grid.samples_for(dg.degree());
    const std::size_t depth = 40;
    const auto nodes = quad::dyadic_to_one(0.0, 0.0, depth, grid.radial.nodes_per_piece);
    CompensatedSum<double> acc;
    for (std::size_t i = 0; i < nodes.x.size(); ++i) {
      const double x = nodes.x[i];
      acc.add(nodes.w[i] * circle_max(dg, x, M) * std::log(std::numbers::e / (1.0 - x)));
    }
    r.value = acc.value();
    r.evidence.push_back({{"method", "dyadic_quadrature"}, {"depth", depth}, {"angular_samples", M}});
  }
  r.verdict = Verdict::bounded;
  return r;
}

// ---------------------------------------------------------------------------
// Growth functional for 0 < p < 1 and g = z:
// F(x) = (1-x) sum_k c_p(k) x^{2k+1}/(k+1), c_p(0) = 1,
// c_p(k+1) = c_p(k) (k+1+1/p)/(k+1). It grows like (1-x)^{-(1/p-1)}.

inline double p_less_one_functional(double p, double x) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p_less_one_functional: p must lie in (0,1)");
  if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("p_less_one_functional: x must lie in (0,1)");
  const double x2 = x * x;
  CompensatedSum<double> acc;
  double c = 1.0, xp = x;
  for (std::size_t k = 0;; ++k) {
    const double t = c * xp / static_cast<double>(k + 1);
    acc.add(t);
    if (k > 16 && t < 1e-18 * acc.value()) break;
    if (k > 100000000) throw std::runtime_error("p_less_one_functional: series did not converge");
    c *= (static_cast<double>(k) + 1.0 + 1.0 / p) / (static_cast<double>(k) + 1.0);
    xp *= x2;
  }
  return (1.0 - x) * acc.value();
}

/// Least-squares slope of ys against xs.
inline double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("ls_slope: need at least two matched points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("ls_slope: abscissae are all equal");
  return sxy / sxx;
}

struct ExponentFit {
  double exponent = 0.0;
  std::vector<double> x;
  std::vector<double> F;
};

/// Slope of log F(x) against log(1/(1-x)).
inline ExponentFit fit_p_less_one_exponent(double p, const std::vector<double>& xgrid) {
  ExponentFit fit;
  std::vector<double> lx, lf;
  for (double x : xgrid) {
    const double F = p_less_one_functional(p, x);
    fit.x.push_back(x);
    fit.F.push_back(F);
    lx.push_back(std::log(1.0 / (1.0 - x)));
    lf.push_back(std::log(F));
  }
  fit.exponent = ls_slope(lx, lf);
  return fit;
}

inline std::vector<double> dyadic_xgrid(std::size_t j0, std::size_t j1) {
  std::vector<double> x;
  for (std::size_t j = j0; j <= j1; ++j) x.push_back(1.0 - std::ldexp(1.0, -static_cast<int>(j)));
  return x;
}

// ---------------------------------------------------------------------------

struct TrendFit {
  double slope = 0.0;
  double early_slope = 0.0;
  double late_slope = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

inline nlohmann::ordered_json to_json(const TrendFit& t) {
  return {{"slope", t.slope}, {"early_slope", t.early_slope}, {"late_slope", t.late_slope}, {"verdict", to_string(t.verdict)}};
}

/// Family-level divergence test on values computed at increasing degrees:
/// slope of value vs log N above threshold, and the growth must persist
/// (late-half slope at least 0.8 of the early-half slope). A flat fit gives
/// bounded, a decaying positive slope inconclusive.
inline TrendFit divergence_trend(const std::vector<double>& degrees, const std::vector<double>& values,
                                 double threshold = 0.05) {
  if (degrees.size() < 5) throw std::invalid_argument("divergence_trend: need at least 5 degrees");
  std::vector<double> lx;
  for (double d : degrees) lx.push_back(std::log(d));
  TrendFit t;
  t.slope = ls_slope(lx, values);
  const std::size_t h = degrees.size() / 2;
  const std::size_t lo_end = degrees.size() - h;  // early half includes the middle point
  t.early_slope = ls_slope({lx.begin(), lx.begin() + lo_end}, {values.begin(), values.begin() + lo_end});
  t.late_slope = ls_slope({lx.begin() + h, lx.end()}, {values.begin() + h, values.end()});
  if (t.slope <= threshold) {
    t.verdict = Verdict::bounded;
  } else if (t.late_slope >= 0.8 * t.early_slope) {
    t.verdict = Verdict::unbounded;
  } else {
    t.verdict = Verdict::inconclusive;
  }
  return t;
}

// ---------------------------------------------------------------------------

/// Dispatch to the characterisation that applies to X.
inline CriterionReport verdict(const Symbol& g, const SpaceId& X, std::size_t K_max = 100000) {
  X.validate();
  const bool constant = g.series().is_constant();
  switch (X.kind) {
    case SpaceKind::Hp:
    case SpaceKind::Dp:
    case SpaceKind::HLp: {
      const double p = X.param;
      if (p < 1.0) {
        CriterionReport r;
        r.kind = CriterionKind::ConstantOnly;
        r.p = p;
        r.rule = X.kind == SpaceKind::Dp ? "constant_only_dirichlet_below_one" : "constant_only_below_one";
        r.value = constant ? 0.0 : std::numeric_limits<double>::infinity();
        r.verdict = constant ? Verdict::bounded : Verdict::unbounded;
        if (!constant) {
          const auto fit = fit_p_less_one_exponent(p, dyadic_xgrid(1, 12));
          r.evidence.push_back({{"model_symbol", "z"},
                                {"functional_exponent", fit.exponent},
                                {"predicted_exponent", 1.0 / p - 1.0},
                                {"functional_last", fit.F.back()}});
        }
        return r;
      }
      if (p == 1.0) {
        auto r = q_one(g, K_max);
        r.rule = "polynomials_bounded_p_one";
        r.evidence.push_back({{"compact", constant}, {"note", "compact only for constant symbols"}});
        return r;
      }
      return q_p(g, p, K_max);
    }
    case SpaceKind::BMOA:
    case SpaceKind::HinfLog: return q_log_sum(g);
    case SpaceKind::BlochAlpha:
      if (X.param == 1.0) return q_log_sum(g);
      [[fallthrough]];
    default:
      throw std::invalid_argument(std::string("verdict: unsupported space ") + X.label());
  }
}

} // namespace vlab
