#pragma once

// Desk-scale experiments: each returns an ExperimentReport with rows,
// environment metadata and pass/fail checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "volterra_lab/config.hpp"
#include "volterra_lab/criteria.hpp"
#include "volterra_lab/families.hpp"
#include "volterra_lab/report.hpp"
#include "volterra_lab/series.hpp"
#include "volterra_lab/smooth_basis.hpp"
#include "volterra_lab/space_norms.hpp"
#include "volterra_lab/volterra.hpp"

namespace vlab {

/// Monomials z^k (k <= 64) and truncated kernels (1 - x w)^{-1}, x = 1 - 2^{-j}.
inline std::vector<PowerSeries> standard_testset(std::size_t kernel_degree = 1024) {
  std::vector<PowerSeries> t;
  for (std::size_t k = 0; k <= 64; ++k) t.push_back(PowerSeries::monomial(k));
  for (std::size_t j = 1; j <= 8; ++j) {
    const double x = 1.0 - std::ldexp(1.0, -static_cast<int>(j));
    std::vector<cplx> c(kernel_degree + 1);
    double xk = 1.0;
    for (auto& v : c) {
      v = xk;
      xk *= x;
    }
    t.emplace_back(std::move(c));
  }
  return t;
}

/// Truncations of log(e/(1 - x w)) = 1 + sum x^k w^k / k.
inline std::vector<PowerSeries> log_testset(std::size_t degree = 1024) {
  std::vector<PowerSeries> t;
  for (std::size_t j = 1; j <= 10; ++j) {
    const double x = 1.0 - std::ldexp(1.0, -static_cast<int>(j));
    std::vector<cplx> c(degree + 1);
    c[0] = 1.0;
    double xk = 1.0;
    for (std::size_t k = 1; k <= degree; ++k) {
      xk *= x;
      c[k] = xk / static_cast<double>(k);
    }
    t.emplace_back(std::move(c));
  }
  return t;
}

namespace detail {

inline nlohmann::ordered_json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

inline nlohmann::ordered_json environment(const LabConfig& cfg) {
  nlohmann::ordered_json env;
  env["config"] = cfg.to_json();
  env["grid"] = grid_to_json(cfg.grid_spec());
  return env;
}

struct MinMax {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double spread() const { return hi > 0.0 ? hi / lo : 1.0; }
};

inline bool in_window(double v, double lo, double hi) { return std::isfinite(v) && v >= lo && v <= hi; }

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline std::vector<double> as_doubles(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

} // namespace detail

/// Compares q_p with dual tests of kernel slices and operator lower bounds.
inline ExperimentReport run_equivalence(double p, const std::vector<SymbolFamily>& families,
                                        const std::vector<std::size_t>& degrees, const LabConfig& cfg = {}) {
  if (!(p > 1.0 && std::isfinite(p))) throw std::invalid_argument("equivalence: p must lie in (1, inf)");
  if (families.empty() || degrees.empty()) throw std::invalid_argument("equivalence: need families and degrees");
  const double q = p / (p - 1.0);
  const GridSpec grid = cfg.grid_spec();
  const auto xgrid = dyadic_xgrid(1, cfg.zgrid_depth);
  const auto testset = standard_testset();
  ExperimentReport rep;
  rep.id = "equivalence";
  rep.parameters = {{"p", p}, {"p_conjugate", q}, {"degrees", degrees}};
  for (const auto& f : families) rep.parameters["families"].push_back(f.label());
  rep.environment = detail::environment(cfg);
  detail::MinMax hl_ratio;
  for (const auto& fam : families) {
    std::vector<double> qvals, qdegs;
    detail::MinMax fam_ratio;
    for (std::size_t N : degrees) {
      const Symbol g = fam.symbol(N);
      if (!g.nonneg()) throw std::invalid_argument("equivalence: family " + fam.label() + " is not nonneg");
      const std::size_t deg = g.series().degree();
      const std::size_t K = cfg.kernel_K ? cfg.kernel_K : default_kernel_K(g);
      const auto crit = q_p(g, p, K);
      nlohmann::ordered_json row;
      row["family"] = fam.label();
      row["p"] = p;
      row["degree"] = deg;
      row["K"] = K;
      row["q_p"] = crit.value;
      row["q_p_tail"] = *crit.tail_bound;
      qvals.push_back(crit.value);
      qdegs.push_back(static_cast<double>(std::max<std::size_t>(deg, 1)));
      if (deg <= cfg.max_dual_degree) {
        const auto dt = dual_test_positive(g, SpaceId::hardy_littlewood(q), xgrid, K, grid);
        const double dv = std::pow(dt.estimate.value, q);
        row["dual_HL"] = dt.estimate.value;
        row["dual_HL_argmax"] = dt.argmax.real();
        row["ratio_HL"] = detail::finite_or_null(safe_ratio(dv, crit.value));
        if (crit.value > 0.0) {
          hl_ratio.add(dv / crit.value);
          fam_ratio.add(dv / crit.value);
          rep.check("window " + fam.label() + " N=" + std::to_string(deg),
                    detail::in_window(dv / crit.value, cfg.window_lo, cfg.window_hi), "ratio_HL=" + detail::fmt(dv / crit.value));
        }
        if (cfg.extra_norms) {
          const auto dd = dual_test_positive(g, SpaceId::dirichlet(q), xgrid, K, grid);
          const auto dh = dual_test_positive(g, SpaceId::hardy(q), xgrid, K, grid);
          row["dual_D"] = dd.estimate.value;
          row["ratio_D"] = detail::finite_or_null(safe_ratio(std::pow(dd.estimate.value, q), crit.value));
          row["dual_H"] = dh.estimate.value;
          row["ratio_H"] = detail::finite_or_null(safe_ratio(std::pow(dh.estimate.value, q), crit.value));
        }
        const double op = opnorm_lower(g, SpaceId::hardy_littlewood(p), testset, grid);
        row["opnorm_lower"] = op;
        row["ratio_op"] = detail::finite_or_null(safe_ratio(std::pow(op, q), crit.value));
        rep.check("opnorm<=dual " + fam.label() + " N=" + std::to_string(deg), op <= dt.estimate.value * 1.05,
                  "op=" + detail::fmt(op) + " dual=" + detail::fmt(dt.estimate.value));
      }
      rep.rows.push_back(std::move(row));
    }
    if (fam_ratio.hi > 0.0) {
      rep.summary["stability"][fam.label()] = fam_ratio.spread();
    }
    if (!fam.fixed() && degrees.size() >= 5) {
      const auto t = divergence_trend(qdegs, qvals, cfg.divergence_threshold);
      rep.summary["trend"][fam.label()] = to_json(t);
    }
  }
  if (hl_ratio.hi > 0.0) {
    rep.summary["ratio_HL_min"] = hl_ratio.lo;
    rep.summary["ratio_HL_max"] = hl_ratio.hi;
    rep.summary["ratio_HL_spread"] = hl_ratio.spread();
    rep.check("stability across rows", hl_ratio.spread() <= cfg.stability, "spread=" + detail::fmt(hl_ratio.spread()));
  }
  return rep;
}

/// q_log_sum vs q_log_integral, with H^1 dual tests and H^inf_log lower bounds.
inline ExperimentReport run_thm14(const std::vector<SymbolFamily>& families, const std::vector<std::size_t>& degrees,
                                  const LabConfig& cfg = {}) {
  if (families.empty() || degrees.empty()) throw std::invalid_argument("thm14: need families and degrees");
  const GridSpec grid = cfg.grid_spec();
  const auto xgrid = dyadic_xgrid(1, cfg.zgrid_depth);
  const auto testset = log_testset();
  ExperimentReport rep;
  rep.id = "thm14";
  rep.parameters = {{"degrees", degrees}};
  for (const auto& f : families) rep.parameters["families"].push_back(f.label());
  rep.environment = detail::environment(cfg);
  for (const auto& fam : families) {
    std::vector<double> vals, degs;
    for (std::size_t N : degrees) {
      const Symbol g = fam.symbol(N);
      if (!g.nonneg()) throw std::invalid_argument("thm14: family " + fam.label() + " is not nonneg");
      const std::size_t deg = g.series().degree();
      const auto ls = q_log_sum(g);
      const auto li = q_log_integral(g, grid);
      nlohmann::ordered_json row;
      row["family"] = fam.label();
      row["degree"] = deg;
      row["q_log_sum"] = ls.value;
      row["q_log_integral"] = li.value;
      const double ratio = safe_ratio(ls.value, li.value);
      row["ratio_sum_integral"] = detail::finite_or_null(ratio);
      if (li.value > 0.0) {
        rep.check("log window " + fam.label() + " N=" + std::to_string(deg),
                  detail::in_window(ratio, 1.0 / cfg.log_window, cfg.log_window), "ratio=" + detail::fmt(ratio));
      }
      if (deg <= cfg.max_dual_degree) {
        const std::size_t K = cfg.kernel_K ? cfg.kernel_K : default_kernel_K(g);
        const auto dt = dual_test_positive(g, SpaceId::hardy(1.0), xgrid, K, grid);
        row["K"] = K;
        row["dual_H1"] = dt.estimate.value;
        row["ratio_dual"] = detail::finite_or_null(safe_ratio(dt.estimate.value, ls.value));
        const double op = opnorm_lower(g, SpaceId::log_growth(), testset, grid);
        row["opnorm_lower"] = op;
        row["ratio_op"] = detail::finite_or_null(safe_ratio(op, ls.value));
      }
      vals.push_back(ls.value);
      degs.push_back(static_cast<double>(std::max<std::size_t>(deg, 1)));
      rep.rows.push_back(std::move(row));
    }
    if (!fam.fixed() && degrees.size() >= 5) {
      rep.summary["trend"][fam.label()] = to_json(divergence_trend(degs, vals, cfg.divergence_threshold));
    }
  }
  return rep;
}

/// H^p, D^p_{p-1} and HL_p norms of a nonneg, nonincreasing family.
inline ExperimentReport run_inclusion(const SymbolFamily& family, double p, const std::vector<std::size_t>& degrees,
                                      const LabConfig& cfg = {}) {
  if (!(p >= 1.0 && std::isfinite(p))) throw std::invalid_argument("inclusion: p must lie in [1, inf)");
  if (degrees.empty()) throw std::invalid_argument("inclusion: need degrees");
  const GridSpec grid = cfg.grid_spec();
  ExperimentReport rep;
  rep.id = "inclusion";
  rep.parameters = {{"family", family.label()}, {"p", p}, {"degrees", degrees}};
  rep.environment = detail::environment(cfg);
  detail::MinMax r1, r2, r3;
  for (std::size_t N : degrees) {
    const PowerSeries f = family.series(N);
    const auto c = f.coeffs();
    for (std::size_t n = 0; n < c.size(); ++n) {
      if (c[n].imag() != 0.0 || c[n].real() < 0.0) throw std::invalid_argument("inclusion: coefficients must be nonnegative");
      if (n >= 2 && c[n].real() > c[n - 1].real()) throw std::invalid_argument("inclusion: coefficients must be nonincreasing");
    }
    const double h = norm(f, SpaceId::hardy(p), grid).value;
    const double d = norm(f, SpaceId::dirichlet(p), grid).value;
    const double l = norm(f, SpaceId::hardy_littlewood(p), grid).value;
    nlohmann::ordered_json row;
    row["family"] = family.label();
    row["p"] = p;
    row["degree"] = f.degree();
    row["H"] = h;
    row["D"] = d;
    row["HL"] = l;
    row["ratio_H_D"] = safe_ratio(std::pow(h, p), std::pow(d, p));
    row["ratio_D_HL"] = safe_ratio(std::pow(d, p), std::pow(l, p));
    row["ratio_HL_H"] = safe_ratio(std::pow(l, p), std::pow(h, p));
    for (const char* k : {"ratio_H_D", "ratio_D_HL", "ratio_HL_H"}) {
      const double v = row[k].get<double>();
      rep.check(std::string(k) + " N=" + std::to_string(f.degree()), detail::in_window(v, cfg.window_lo, cfg.window_hi),
                detail::fmt(v));
    }
    r1.add(row["ratio_H_D"].get<double>());
    r2.add(row["ratio_D_HL"].get<double>());
    r3.add(row["ratio_HL_H"].get<double>());
    rep.rows.push_back(std::move(row));
    if (family.fixed()) break;
  }
  rep.summary["spread_H_D"] = r1.spread();
  rep.summary["spread_D_HL"] = r2.spread();
  rep.summary["spread_HL_H"] = r3.spread();
  rep.check("stability", std::max({r1.spread(), r2.spread(), r3.spread()}) <= cfg.stability);
  return rep;
}

/// Growth of the lower-bound functional for g = z and 0 < p < 1.
inline ExperimentReport run_p_less_one(double p, const std::vector<double>& xgrid, const LabConfig& cfg = {}) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("plessone: p must lie in (0,1)");
  if (xgrid.size() < 2) throw std::invalid_argument("plessone: need at least two points");
  const auto fit = fit_p_less_one_exponent(p, xgrid);
  ExperimentReport rep;
  rep.id = "plessone";
  rep.parameters = {{"p", p}, {"symbol", "z"}, {"xgrid", xgrid}};
  rep.environment = detail::environment(cfg);
  for (std::size_t i = 0; i < fit.x.size(); ++i) {
    rep.rows.push_back({{"x", fit.x[i]}, {"one_minus_x", 1.0 - fit.x[i]}, {"F", fit.F[i]}});
  }
  const double predicted = 1.0 / p - 1.0;
  rep.summary = {{"fitted_exponent", fit.exponent}, {"predicted_exponent", predicted}};
  rep.check("exponent within 0.15", std::abs(fit.exponent - predicted) <= 0.15,
            "fitted=" + detail::fmt(fit.exponent) + " predicted=" + detail::fmt(predicted));
  return rep;
}

/// Invariant suite over every module, deterministic in the seed. Coarse
/// grids use looser tolerances, recorded in the report.
inline ExperimentReport run_verify(std::uint64_t seed, const std::string& grid_label = "default") {
  const GridSpec grid = GridSpec::preset(grid_label);
  const bool coarse = grid_label == "coarse";
  const double tol_quad = coarse ? 1e-4 : 1e-6;
  ExperimentReport rep;
  rep.id = "verify";
  rep.parameters = {{"seed", seed}, {"grid", grid_label}};
  rep.environment = {{"grid", grid_to_json(grid)}, {"tolerances", {{"algebraic", 1e-10}, {"quadrature", tol_quad}}}};
  std::mt19937_64 rng(seed);
  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      rep.check(name, false, std::string("exception: ") + e.what());
    }
  };

  guarded("duality identity", [&] {
    double worst = 0.0;
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    for (int t = 0; t < 10; ++t) {
      const auto f = random_polynomial(rng, 8);
      const Symbol g(random_polynomial(rng, 8));
      const cplx z = std::polar(ud(rng), 2.0 * std::numbers::pi * ud(rng));
      const cplx lhs = pairing_h2(f, kernel_slice(g, z, 16).series);
      const cplx rhs = evaluate(apply_tg(g, f), z);
      worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
    rep.check("duality identity", worst <= 1e-10, "max rel err " + detail::fmt(worst));
  });

  guarded("linearity of T_g", [&] {
    const Symbol g(random_polynomial(rng, 12));
    const auto f1 = random_polynomial(rng, 10), f2 = random_polynomial(rng, 10);
    const cplx a{0.5, -1.25}, b{2.0, 0.75};
    const auto lhs = apply_tg(g, a * f1 + b * f2);
    const auto rhs = a * apply_tg(g, f1) + b * apply_tg(g, f2);
    double err = 0.0;
    for (std::size_t k = 0; k < std::max(lhs.size(), rhs.size()); ++k) err = std::max(err, std::abs(lhs[k] - rhs[k]));
    rep.check("linearity of T_g", err <= 1e-12 * (1.0 + l1_norm(lhs)), "max err " + detail::fmt(err));
  });

  guarded("kernel tail bound", [&] {
    const Symbol g(random_polynomial(rng, 6));
    bool ok = true;
    for (double r : {0.5, 0.9, 0.99}) {
      const cplx z = std::polar(r, 1.0);
      const auto s = kernel_slice(g, z, 64);
      const auto big = kernel_slice(g, z, 64 + 8192);
      double tail = 0.0;
      for (std::size_t k = 65; k < big.series.size(); ++k) tail += std::abs(big.series[k]);
      ok = ok && tail <= s.tail_bound * (1.0 + 1e-12);
    }
    rep.check("kernel tail bound", ok);
  });

  guarded("H2 Parseval on dyadic blocks", [&] {
    double worst = 0.0;
    for (std::size_t n = 0; n <= 12; ++n) {
      const double v = norm(dyadic_indicator(n), SpaceId::hardy(2.0), grid).value;
      worst = std::max(worst, std::abs(v - std::sqrt(std::ldexp(1.0, static_cast<int>(n)))));
    }
    rep.check("H2 Parseval on dyadic blocks", worst <= 1e-12, "max err " + detail::fmt(worst));
  });

  guarded("reconstruction from V_n", [&] {
    const auto f = random_polynomial(rng, 1000);
    std::vector<cplx> acc(f.size(), cplx{});
    for (std::size_t n = 0; n == 0 || (std::size_t{1} << (n - 1)) <= f.degree(); ++n) {
      const auto part = hadamard(v_n(n, std::size_t{1} << 20), f);
      for (std::size_t k = 0; k < part.size(); ++k) acc[k] += part[k];
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) worst = std::max(worst, std::abs(acc[k] - f[k]) / std::abs(f[k]));
    rep.check("reconstruction from V_n", worst <= 1e-13, "max rel err " + detail::fmt(worst));
  });

  guarded("Green pairing", [&] {
    double worst = 0.0;
    for (int t = 0; t < 5; ++t) {
      const auto f = random_polynomial(rng, 16), g = random_polynomial(rng, 16);
      const cplx h2 = pairing_h2(f, g);
      worst = std::max(worst, std::abs(green_pairing(f, g, grid) - h2) / (1.0 + std::abs(h2)));
    }
    rep.check("Green pairing", worst <= tol_quad, "max rel err " + detail::fmt(worst));
  });

  guarded("integral means increase with r", [&] {
    const auto f = random_polynomial(rng, 20);
    bool ok = true;
    double prev = 0.0;
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
      const double m = integral_mean(f, r, 1.5, grid.samples_for(f.degree()));
      ok = ok && m >= prev * (1.0 - 1e-12);
      prev = m;
    }
    rep.check("integral means increase with r", ok);
  });

  guarded("criteria at g = z", [&] {
    const Symbol g(PowerSeries{0.0, 1.0}, true);
    const auto qp = q_p(g, 2.0, 100000);
    const double pi2 = std::numbers::pi * std::numbers::pi / 6.0;
    const bool bracket = qp.value <= pi2 && qp.value + *qp.tail_bound >= pi2;
    const bool one = q_one(g, 1000).value == 1.0;
    const bool ls = std::abs(q_log_sum(g).value - std::log(2.0)) <= 1e-12;
    const bool li = std::abs(q_log_integral(g, grid).value - 2.0) <= 1e-12;
    rep.check("criteria at g = z", bracket && one && ls && li);
  });

  guarded("criteria homogeneity", [&] {
    const Symbol g(random_nonneg_polynomial(rng, 10), true);
    const double c = 2.5;
    const Symbol cg(cplx{c} * g.series(), true);
    const double q = 3.0;
    const double r1 = q_p(cg, 1.5, 2000).value / (std::pow(c, q) * q_p(g, 1.5, 2000).value);
    const double r2 = q_one(cg, 2000).value / (c * q_one(g, 2000).value);
    const double r3 = q_log_sum(cg).value / (c * q_log_sum(g).value);
    const bool ok = std::abs(r1 - 1.0) <= 1e-12 && std::abs(r2 - 1.0) <= 1e-12 && std::abs(r3 - 1.0) <= 1e-12;
    rep.check("criteria homogeneity", ok);
  });

  guarded("p < 1 exponent", [&] {
    const auto fit = fit_p_less_one_exponent(0.5, dyadic_xgrid(1, 12));
    rep.check("p < 1 exponent", std::abs(fit.exponent - 1.0) <= 0.15, "fitted " + detail::fmt(fit.exponent));
  });

  guarded("lambda_p coefficients", [&] {
    bool ok = true;
    for (double p : {1.0, 0.5}) {
      const auto l = lambda_p(p, 1000);
      for (std::size_t n = 1; n <= 1000; ++n) {
        const double v = l[n].real();
        ok = ok && v > 1.0 && v <= 1.0 + 1.0 / p + 1e-15 && (n == 1 || v <= l[n - 1].real());
        ok = ok && std::abs(v - moment_w(n - 1, p) / moment_w(n, p)) <= 1e-10 * v;
      }
    }
    rep.check("lambda_p coefficients", ok);
  });

  guarded("parse error on corrupted input", [&] {
    bool caught = false;
    try {
      (void)parse_series("[[1, 2], [3,");
    } catch (const parse_error&) {
      caught = true;
    }
    rep.check("parse error on corrupted input", caught);
  });

  std::size_t passed = 0;
  for (const auto& c : rep.checks) passed += c.passed ? 1 : 0;
  rep.summary = {{"passed", passed}, {"total", rep.checks.size()}};
  for (const auto& c : rep.checks) rep.rows.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return rep;
}

} // namespace vlab
