#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/digamma.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "volterra_lab/fft.hpp"
#include "volterra_lab/quadrature.hpp"
#include "volterra_lab/special.hpp"
#include "volterra_lab/summation.hpp"

using namespace vlab;
using cplx = std::complex<double>;

namespace {

std::vector<cplx> brute_dft(const std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<long double> s = 0.0L;
    for (std::size_t m = 0; m < n; ++m) {
      const long double ang = sign * 2.0L * std::numbers::pi_v<long double> * static_cast<long double>((j * m) % n) / n;
      s += std::complex<long double>(a[m].real(), a[m].imag()) * std::complex<long double>(std::cos(ang), std::sin(ang));
    }
    out[j] = {static_cast<double>(s.real()), static_cast<double>(s.imag())};
  }
  return out;
}

} // namespace

TEST(FFT, MatchesBruteForceForEveryPath) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  for (std::size_t n : {1u, 2u, 5u, 64u, 100u, 256u, 257u, 600u, 1024u}) {
    std::vector<cplx> a(n);
    for (auto& v : a) v = {nd(rng), nd(rng)};
    for (int sign : {-1, 1}) {
      const auto got = fft::dft(a, sign);
      const auto want = brute_dft(a, sign);
      double err = 0.0, scale = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        err = std::max(err, std::abs(got[j] - want[j]));
        scale += std::abs(a[j]);
      }
      EXPECT_LE(err, 1e-13 * scale) << "n=" << n;
    }
  }
}

TEST(FFT, InverseRoundTrip) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> nd;
  std::vector<cplx> a(4096);
  for (auto& v : a) v = {nd(rng), nd(rng)};
  auto b = a;
  fft::radix2(b, -1);
  fft::radix2(b, +1);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(std::abs(b[i] / 4096.0 - a[i]), 0.0, 1e-12);
  EXPECT_EQ(fft::next_pow2(17), 32u);
  EXPECT_EQ(fft::next_pow2(32), 32u);
  EXPECT_TRUE(fft::is_pow2(1));
  EXPECT_FALSE(fft::is_pow2(12));
}

TEST(CompensatedSum, RecoversCancellation) {
  std::vector<double> xs{1e16, 1.0, -1e16, 1.0};
  EXPECT_EQ(compensated_sum(xs), 2.0);
  CompensatedSum<double> acc;
  for (int i = 0; i < 1000000; ++i) acc.add(0.1);
  EXPECT_NEAR(acc.value(), 100000.0, 1e-9);
}

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
  for (std::size_t n : {1u, 2u, 5u, 16u, 40u}) {
    const auto r = quad::gauss_legendre(n);
    for (std::size_t d = 0; d <= 2 * n - 1; ++d) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], static_cast<double>(d));
      const double want = d % 2 ? 0.0 : 2.0 / static_cast<double>(d + 1);
      EXPECT_NEAR(s, want, 1e-14) << "n=" << n << " d=" << d;
    }
  }
  EXPECT_THROW(quad::gauss_legendre(0), std::invalid_argument);
}

TEST(DyadicRule, EndpointPowerMomentsMatchBeta) {
  for (double gamma : {-0.5, 0.0, 0.5, 2.0}) {
    for (double r0 : {0.0, 0.3, 0.75}) {
      const auto nodes = quad::dyadic_to_one(r0, gamma, 20, 16);
      for (int k : {0, 1, 7, 40}) {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.x.size(); ++i) s += nodes.w[i] * std::pow(nodes.x[i], k);
        // int_{r0}^1 r^k (1-r)^gamma dr = B_{1-r0}(gamma+1, k+1), non-normalised
        const double full = boost::math::beta(gamma + 1.0, k + 1.0);
        const double oracle = boost::math::beta(gamma + 1.0, k + 1.0, 1.0 - r0);
        EXPECT_NEAR(s, oracle, 1e-11 * full) << "gamma=" << gamma << " r0=" << r0 << " k=" << k;
      }
    }
  }
  EXPECT_THROW(quad::dyadic_to_one(0.0, -1.0, 10, 8), std::invalid_argument);
  EXPECT_THROW(quad::dyadic_to_one(1.0, 0.0, 10, 8), std::invalid_argument);
}

TEST(GradedRule, LogEndpointMoments) {
  const auto nodes = quad::graded_from_zero(40, 16);
  for (int k : {0, 1, 3, 10}) {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.x.size(); ++i) s += nodes.w[i] * std::log(1.0 / nodes.x[i]) * std::pow(nodes.x[i], k);
    EXPECT_NEAR(s, 1.0 / ((k + 1.0) * (k + 1.0)), 1e-12);
  }
}

TEST(Special, LogBetaMatchesBoost) {
  for (double a : {0.5, 1.0, 3.0, 101.0, 1e4}) {
    for (double b : {0.25, 1.0, 2.5}) {
      EXPECT_NEAR(special::beta(a, b), boost::math::beta(a, b), 1e-12 * boost::math::beta(a, b));
    }
  }
  EXPECT_THROW(special::log_beta(0.0, 1.0), std::invalid_argument);
}

TEST(Special, HarmonicAcrossBothRegimes) {
  for (std::size_t n : {1u, 2u, 10u, 9999u, 10000u, 10001u, 123456u, 10000000u}) {
    const double want = boost::math::digamma(static_cast<double>(n) + 1.0) + std::numbers::egamma;
    EXPECT_NEAR(special::harmonic(n), want, 1e-12 * want) << n;
  }
  EXPECT_EQ(special::harmonic(0), 0.0);
}

TEST(Special, LogWeightMomentMatchesQuadrature) {
  boost::math::quadrature::tanh_sinh<double> ts;
  for (std::size_t n : {0u, 1u, 10u, 100u, 10000u}) {
    // s = 1 - t keeps the logarithmic endpoint exact
    auto f = [n](double s) { return std::pow(1.0 - s, static_cast<double>(n)) * (1.0 - std::log(s)); };
    const double q = ts.integrate(f, 0.0, 1.0);
    EXPECT_NEAR(special::log_weight_moment(n), q, 1e-10 * q) << n;
  }
}
