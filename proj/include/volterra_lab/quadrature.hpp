#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace vlab::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
inline Rule gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) { p1 = x; p0 = 1.0; }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = pk;
    }
    if (n == 1) { p1 = x; p0 = 1.0; }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

/// Cached rule; the cache is guarded and rules are immutable once built.
inline const Rule& cached_gauss_legendre(std::size_t n) {
  static std::mutex mtx;
  static std::map<std::size_t, Rule> cache;
  std::lock_guard lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
  return it->second;
}

/// A weighted node set for int f(r) dr over some interval.
struct Nodes {
  std::vector<double> x;
  std::vector<double> w;
  void append_mapped(const Rule& rule, double a, double b) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      x.push_back(mid + half * rule.nodes[i]);
      w.push_back(half * rule.weights[i]);
    }
  }
};

/// Composite Gauss-Legendre on [a, b] with `pieces` equal subintervals.
inline Nodes composite(double a, double b, std::size_t pieces, std::size_t order) {
  Nodes out;
  const Rule& rule = cached_gauss_legendre(order);
  for (std::size_t k = 0; k < pieces; ++k) {
    const double lo = a + (b - a) * static_cast<double>(k) / static_cast<double>(pieces);
    const double hi = a + (b - a) * static_cast<double>(k + 1) / static_cast<double>(pieces);
    out.append_mapped(rule, lo, hi);
  }
  return out;
}

/// Radial rule for int_{r0}^{1} F(r) (1-r)^{gamma} dr with gamma > -1.
/// Pieces [1-2^{-j}, 1-2^{-j-1}] in s = 1 - r, starting from s0 = 1 - r0
/// and refining down to 2^{-depth}. The last piece [0, h] is mapped by
/// s = h u^{1/(gamma+1)}, which absorbs the endpoint power exactly.
/// Returned weights already include the factor (1-r)^gamma.
inline Nodes dyadic_to_one(double r0, double gamma, std::size_t depth, std::size_t order) {
  if (!(gamma > -1.0)) throw std::invalid_argument("dyadic_to_one: gamma must exceed -1");
  if (!(r0 >= 0.0 && r0 < 1.0)) throw std::invalid_argument("dyadic_to_one: r0 must lie in [0,1)");
  Nodes out;
  const Rule& rule = cached_gauss_legendre(order);
  double s_hi = 1.0 - r0;
  double s_lo = s_hi;
  std::size_t j = 0;
  // first boundary at or below s_hi of the form 2^{-j}
  while (std::ldexp(1.0, -static_cast<int>(j)) >= s_hi && j < depth) ++j;
  for (; j <= depth; ++j) {
    s_lo = std::ldexp(1.0, -static_cast<int>(j));
    if (s_lo >= s_hi) continue;
    const double half = 0.5 * (s_hi - s_lo), mid = 0.5 * (s_hi + s_lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double s = mid + half * rule.nodes[i];
      out.x.push_back(1.0 - s);
      out.w.push_back(half * rule.weights[i] * std::pow(s, gamma));
    }
    s_hi = s_lo;
  }
  // int_0^h F(1-s) s^gamma ds = h^{g+1}/(g+1) int_0^1 F(1 - h u^{1/(g+1)}) du
  const double h = s_hi;
  const double g1 = gamma + 1.0;
  const double scale = std::pow(h, g1) / g1;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = 0.5 * (1.0 + rule.nodes[i]);
    const double s = h * std::pow(u, 1.0 / g1);
    out.x.push_back(1.0 - s);
    out.w.push_back(0.5 * rule.weights[i] * scale);
  }
  return out;
}

/// Rule on [0, 1] graded geometrically toward r = 0 (for log(1/r) type
/// endpoint behaviour) on [0, 1/2] and plain Gauss-Legendre on [1/2, 1].
inline Nodes graded_from_zero(std::size_t depth, std::size_t order) {
  Nodes out;
  const Rule& rule = cached_gauss_legendre(order);
  out.append_mapped(rule, 0.5, 1.0);
  for (std::size_t k = 1; k <= depth; ++k) {
    out.append_mapped(rule, std::ldexp(1.0, -static_cast<int>(k) - 1), std::ldexp(1.0, -static_cast<int>(k)));
  }
  out.append_mapped(rule, 0.0, std::ldexp(1.0, -static_cast<int>(depth) - 1));
  return out;
}

} // namespace vlab::quad
