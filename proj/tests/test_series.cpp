#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "volterra_lab/families.hpp"
#include "volterra_lab/series.hpp"
#include "volterra_lab/series_io.hpp"

using namespace vlab;

namespace {

cplx naive_eval(const PowerSeries& f, cplx z) {
  cplx s = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) s += f[n] * std::pow(z, static_cast<double>(n));
  return s;
}

double max_diff(const PowerSeries& a, const PowerSeries& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

} // namespace

TEST(PowerSeries, BasicsAndZeroPadding) {
  PowerSeries f{1.0, 2.0, 0.0};
  EXPECT_EQ(f.degree(), 2u);
  EXPECT_EQ(f.effective_degree(), 1u);
  EXPECT_EQ(f[7], cplx{});
  EXPECT_TRUE(f == (PowerSeries{1.0, 2.0}));
  EXPECT_TRUE(PowerSeries::zero(5).is_constant());
  EXPECT_EQ(PowerSeries(std::vector<cplx>{}).size(), 1u);
}

TEST(PowerSeries, RejectsNonFinite) {
  EXPECT_THROW(PowerSeries({1.0, std::nan("")}), std::invalid_argument);
  EXPECT_THROW(PowerSeries({cplx{0.0, INFINITY}}), std::invalid_argument);
}

TEST(Evaluate, HornerMatchesNaiveSum) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const auto f = random_polynomial(rng, 1 + t);
    const cplx z{ud(rng) * 0.7, ud(rng) * 0.7};
    EXPECT_NEAR(std::abs(evaluate(f, z) - naive_eval(f, z)), 0.0, 1e-12 * (1.0 + l1_norm(f)));
  }
}

TEST(Evaluate, CircleSamplesMatchHornerForAnyM) {
  std::mt19937_64 rng(2);
  for (std::size_t M : {1u, 3u, 7u, 16u, 100u, 257u, 300u, 1024u}) {
    const auto f = random_polynomial(rng, 40);
    for (double r : {0.0, 0.5, 1.0}) {
      const auto v = evaluate_circle(f, r, M);
      ASSERT_EQ(v.size(), M);
      double err = 0.0;
      for (std::size_t j = 0; j < M; ++j) {
        const cplx z = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(M));
        err = std::max(err, std::abs(v[j] - naive_eval(f, z)));
      }
      EXPECT_LE(err, 1e-12 * l1_norm(f)) << "M=" << M << " r=" << r;
    }
  }
  EXPECT_THROW(evaluate_circle(PowerSeries{1.0}, 0.5, 0), std::invalid_argument);
  EXPECT_THROW(evaluate_circle(PowerSeries{1.0}, 1.5, 8), std::invalid_argument);
}

TEST(Calculus, DerivativeAndPrimitive) {
  EXPECT_TRUE(derivative(PowerSeries{3.0, 1.0, 2.0}) == (PowerSeries{1.0, 4.0}));
  EXPECT_TRUE(derivative(PowerSeries{5.0}) == PowerSeries::zero());
  EXPECT_TRUE(primitive(PowerSeries{1.0, 2.0}) == (PowerSeries{0.0, 1.0, 1.0}));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_polynomial(rng, 30);
    EXPECT_LE(max_diff(derivative(primitive(f)), f), 1e-13 * l1_norm(f));
  }
}

TEST(Products, CauchyProductMatchesPointwiseProduct) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ud(-0.8, 0.8);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_polynomial(rng, 5 + t), g = random_polynomial(rng, 9);
    const auto h = cauchy_product(f, g);
    EXPECT_EQ(h.degree(), f.degree() + g.degree());
    const cplx z{ud(rng), ud(rng)};
    EXPECT_NEAR(std::abs(evaluate(h, z) - evaluate(f, z) * evaluate(g, z)), 0.0, 1e-11 * l1_norm(f) * l1_norm(g));
  }
}

TEST(Products, HadamardTruncatesToShorter) {
  const auto h = hadamard(PowerSeries{1.0, 2.0, 3.0}, PowerSeries{4.0, 5.0});
  EXPECT_TRUE(h == (PowerSeries{4.0, 10.0}));
  EXPECT_EQ(h.degree(), 1u);
}

TEST(Dilate, EvaluatesAtScaledPoint) {
  std::mt19937_64 rng(5);
  const auto f = random_polynomial(rng, 20);
  const cplx a = std::polar(0.8, 0.4), z{0.3, -0.5};
  EXPECT_NEAR(std::abs(evaluate(dilate(f, a), z) - evaluate(f, a * z)), 0.0, 1e-12 * l1_norm(f));
  EXPECT_NO_THROW(dilate(f, std::polar(1.0, 2.0)));
  EXPECT_THROW(dilate(f, 1.01), std::invalid_argument);
}

TEST(FracDerivative, ScalesByPowers) {
  const auto d = frac_derivative(PowerSeries{1.0, 1.0, 1.0}, 0.5);
  EXPECT_DOUBLE_EQ(d[0].real(), 1.0);
  EXPECT_DOUBLE_EQ(d[1].real(), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(d[2].real(), std::sqrt(3.0));
  const auto f = PowerSeries{0.0, 1.0, 2.0};
  EXPECT_TRUE(frac_derivative(frac_derivative(f, 1.0), -1.0) == f);
}

TEST(Dyadic, BlocksPartitionIndices) {
  std::vector<int> hits(1 << 14, 0);
  for (std::size_t n = 0; n <= 12; ++n) {
    const auto [lo, hi] = dyadic_range(n);
    for (std::size_t k = lo; k <= hi; ++k) {
      ++hits[k];
      EXPECT_EQ(dyadic_index(k), n);
    }
  }
  for (std::size_t k = 0; k < (1u << 13); ++k) EXPECT_EQ(hits[k], 1) << k;
}

TEST(Dyadic, BlocksSumToSeries) {
  std::mt19937_64 rng(6);
  const auto f = random_polynomial(rng, 1000);
  std::vector<cplx> acc(f.size(), cplx{});
  for (std::size_t n = 0; n <= dyadic_index(f.degree()); ++n) {
    const auto b = dyadic_block(f, n);
    for (std::size_t k = 0; k < b.size(); ++k) acc[k] += b[k];
  }
  EXPECT_TRUE(PowerSeries(acc) == f);
}

TEST(Dyadic, IndicatorShape) {
  EXPECT_TRUE(dyadic_indicator(0) == PowerSeries{1.0});
  const auto d3 = dyadic_indicator(3);
  EXPECT_EQ(d3.degree(), 15u);
  double s = 0.0;
  for (std::size_t k = 0; k < d3.size(); ++k) s += d3[k].real();
  EXPECT_EQ(s, 8.0);
  EXPECT_EQ(d3[7], cplx{});
}

TEST(SeriesIO, JsonRoundTrip) {
  std::mt19937_64 rng(7);
  const auto f = random_polynomial(rng, 12);
  EXPECT_TRUE(parse_series(format_series(f)) == f);
}

TEST(SeriesIO, AcceptsBareRealsAndWhitespaceFormat) {
  EXPECT_TRUE(parse_series("[1, [0, 2], 3.5]") == (PowerSeries{1.0, cplx{0.0, 2.0}, 3.5}));
  EXPECT_TRUE(parse_series("# header\n1\n0 2  # comment\n\n3.5\n") == (PowerSeries{1.0, cplx{0.0, 2.0}, 3.5}));
}

TEST(SeriesIO, StructuredErrors) {
  EXPECT_THROW(parse_series(""), parse_error);
  EXPECT_THROW(parse_series("[[1, 2], [3,"), parse_error);
  EXPECT_THROW(parse_series("[]"), parse_error);
  EXPECT_THROW(parse_series("[\"a\"]"), parse_error);
  EXPECT_THROW(parse_series("[[1, 2, 3]]"), parse_error);
  EXPECT_THROW(parse_series("1 2 3\n"), parse_error);
  EXPECT_THROW(parse_series("abc\n"), parse_error);
  EXPECT_THROW(parse_series("inf\n"), parse_error);
  EXPECT_THROW(read_series_file("/nonexistent/series.json"), parse_error);
}
