#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/quadrature/trapezoidal.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "volterra_lab/families.hpp"
#include "volterra_lab/space_norms.hpp"

using namespace vlab;
namespace bq = boost::math::quadrature;

namespace {

constexpr double kPi = std::numbers::pi;

double h2_squared(const PowerSeries& f) {
  double s = 0.0;
  for (const auto& c : f.coeffs()) s += std::norm(c);
  return s;
}

// Boost-integrated M_p(r, f)^p; exact for trig polynomials once converged.
double boost_mean_pow(const PowerSeries& f, double r, double p) {
  auto integrand = [&](double t) { return std::pow(std::abs(evaluate(f, std::polar(r, t))), p); };
  return bq::trapezoidal(integrand, 0.0, 2.0 * kPi, 1e-13) / (2.0 * kPi);
}

} // namespace

TEST(SpaceId, ValidationAndLabels) {
  EXPECT_THROW(SpaceId::hardy(0.0), std::invalid_argument);
  EXPECT_THROW(SpaceId::bloch(-1.0), std::invalid_argument);
  EXPECT_EQ(space_kind_from_string("BMOA"), SpaceKind::BMOA);
  EXPECT_THROW(space_kind_from_string("L2"), std::invalid_argument);
  EXPECT_EQ(SpaceId::bmoa().label(), "BMOA");
}

TEST(GridSpec, PresetsAndValidation) {
  for (const char* name : {"coarse", "default", "fine"}) EXPECT_NO_THROW(GridSpec::preset(name).validate());
  EXPECT_THROW(GridSpec::preset("huge"), std::invalid_argument);
  GridSpec g = default_grid();
  g.radii = {0.5, 0.4};
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g = default_grid();
  g.disc_points = {cplx{1.0, 0.0}};
  EXPECT_THROW(g.validate(), std::invalid_argument);
  // smallest power of two exceeding oversample * (deg + 1)
  EXPECT_EQ(default_grid().samples_for(15), 128u);
  EXPECT_EQ(default_grid().samples_for(0), 64u);
}

TEST(HardyNorm, H2IsExactParseval) {
  std::mt19937_64 rng(21);
  const auto f = random_polynomial(rng, 50);
  const auto e = norm(f, SpaceId::hardy(2.0));
  EXPECT_TRUE(e.exact);
  EXPECT_DOUBLE_EQ(e.value, std::sqrt(h2_squared(f)));
  for (std::size_t n = 0; n <= 12; ++n) {
    EXPECT_EQ(norm(dyadic_indicator(n), SpaceId::hardy(2.0)).value, std::sqrt(std::ldexp(1.0, static_cast<int>(n))));
  }
}

TEST(HardyNorm, H4ViaSquareIdentity) {
  // ||f||_4^4 = ||f^2||_2^2
  std::mt19937_64 rng(22);
  for (int t = 0; t < 10; ++t) {
    const auto f = random_polynomial(rng, 10 + 7 * t);
    const double want = std::pow(h2_squared(cauchy_product(f, f)), 0.25);
    EXPECT_NEAR(norm(f, SpaceId::hardy(4.0)).value, want, 1e-12 * want);
  }
}

TEST(HardyNorm, H1AndH3AgainstBoostQuadrature) {
  std::mt19937_64 rng(23);
  const auto f = random_polynomial(rng, 6);
  for (double p : {1.0, 1.5, 3.0}) {
    const double want = std::pow(boost_mean_pow(f, 1.0, p), 1.0 / p);
    // the trapezoid rule on the samples is not exact for non-even p, so use a fine grid
    GridSpec g = default_grid();
    g.angular_count = 4096;
    EXPECT_NEAR(norm(f, SpaceId::hardy(p), g).value, want, 1e-9 * want) << p;
  }
}

TEST(HardyNorm, MonotoneInExponent) {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 10; ++t) {
    const auto f = random_polynomial(rng, 20);
    double prev = 0.0;
    for (double p : {0.5, 1.0, 2.0, 3.0, 4.0}) {
      const double v = norm(f, SpaceId::hardy(p)).value;
      EXPECT_GE(v, prev * (1.0 - 1e-12));
      prev = v;
    }
    const double inf = norm(f, SpaceId::bounded()).value;
    EXPECT_GE(inf, prev * (1.0 - 1e-12));
    EXPECT_LE(inf, l1_norm(f) * (1.0 + 1e-12));
  }
}

TEST(BoundedNorm, RefinementFindsTrueMaximum) {
  EXPECT_NEAR(norm(PowerSeries{1.0, 1.0}, SpaceId::bounded()).value, 2.0, 1e-12);
  // max at an angle that is not a sample point
  const cplx rot = std::polar(1.0, 0.1234567);
  const PowerSeries f{1.0, std::conj(rot)};
  EXPECT_NEAR(norm(f, SpaceId::bounded()).value, 2.0, 1e-12);
}

TEST(DirichletNorm, P2ClosedForm) {
  // ||f||^2 = |c_0|^2 + sum n |c_n|^2 / (2n + 1)
  std::mt19937_64 rng(25);
  for (int t = 0; t < 5; ++t) {
    const auto f = random_polynomial(rng, 5 + 20 * t);
    double want = std::norm(f[0]);
    for (std::size_t n = 1; n < f.size(); ++n) want += static_cast<double>(n) * std::norm(f[n]) / (2.0 * n + 1.0);
    EXPECT_NEAR(norm(f, SpaceId::dirichlet(2.0)).value, std::sqrt(want), 1e-10 * std::sqrt(want));
  }
}

TEST(DirichletNorm, GeneralPAgainstNestedBoostQuadrature) {
  const PowerSeries f{0.5, 1.0, cplx{0.0, -0.75}, 0.25};
  const PowerSeries df = derivative(f);
  for (double p : {1.0, 1.5, 3.0}) {
    bq::tanh_sinh<double> ts;
    auto radial = [&](double r) { return boost_mean_pow(df, r, p) * std::pow(1.0 - r, p - 1.0) * r; };
    const double want = std::pow(2.0 * ts.integrate(radial, 0.0, 1.0) + std::pow(std::abs(f[0]), p), 1.0 / p);
    GridSpec g = default_grid();
    g.angular_count = 2048;
    // M_1(r, f') has a kink where |zero of f'| = r
    EXPECT_NEAR(norm(f, SpaceId::dirichlet(p), g).value, want, (p == 1.0 ? 1e-6 : 1e-8) * want) << p;
  }
}

TEST(HardyLittlewood, ExactCoefficientFormulas) {
  const PowerSeries f{1.0, -2.0, cplx{0.0, 3.0}};
  const double p = 3.0;
  const double want = std::pow(1.0 * std::pow(1.0, p - 2) + 8.0 * std::pow(2.0, p - 2) + 27.0 * std::pow(3.0, p - 2), 1.0 / p);
  EXPECT_NEAR(norm(f, SpaceId::hardy_littlewood(p)).value, want, 1e-14 * want);
  EXPECT_EQ(norm(f, SpaceId::hl_inf()).value, 9.0);
  EXPECT_TRUE(norm(f, SpaceId::hl_inf()).exact);
  // HL_2 coincides with H^2
  EXPECT_NEAR(norm(f, SpaceId::hardy_littlewood(2.0)).value, norm(f, SpaceId::hardy(2.0)).value, 1e-14);
}

TEST(GrowthNorms, MonomialClosedForms) {
  const std::size_t n = 10;
  const auto f = PowerSeries::monomial(n);
  const double alpha = 1.0;
  // sup r^n (1 - r^2)^alpha at r^2 = n / (n + 2 alpha)
  const double r2 = n / (n + 2.0 * alpha);
  const double growth = std::pow(r2, n / 2.0) * std::pow(1.0 - r2, alpha);
  const double est = norm(f, SpaceId::growth(alpha)).value;
  EXPECT_LE(est, growth * (1.0 + 1e-12));
  EXPECT_GE(est, 0.97 * growth);
  // Bloch: sup n r^{n-1} (1 - r^2)
  const double s2 = (n - 1.0) / (n - 1.0 + 2.0);
  const double bloch = n * std::pow(s2, (n - 1.0) / 2.0) * (1.0 - s2);
  const double b = norm(f, SpaceId::bloch(1.0)).value;
  EXPECT_LE(b, bloch * (1.0 + 1e-12));
  EXPECT_GE(b, 0.97 * bloch);
  EXPECT_NEAR(norm(PowerSeries{1.0}, SpaceId::log_growth()).value, 1.0, 1e-15);
  EXPECT_NEAR(norm(PowerSeries{2.0}, SpaceId::bloch(1.0)).value, 2.0, 1e-15);
}

TEST(BMOA, CarlesonEnergyAgainstBoostAreaIntegral) {
  const PowerSeries g{0.0, 1.0, cplx{0.5, 0.25}, -0.3};
  const PowerSeries dg = derivative(g);
  const GridSpec grid = default_grid();
  for (cplx a : {cplx{0.5, 0.0}, std::polar(0.9, 2.0), std::polar(0.97, -1.0)}) {
    const double rho = std::abs(a), w = 0.5 * (1.0 - rho), phi = std::arg(a);
    bq::gauss_kronrod<double, 31> gk;
    auto radial = [&](double r) {
      auto ang = [&](double t) { return std::norm(evaluate(dg, std::polar(r, t))); };
      return bq::gauss_kronrod<double, 31>::integrate(ang, phi - w, phi + w, 5, 1e-14) * (1.0 - r * r) * r;
    };
    const double want = gk.integrate(radial, rho, 1.0, 5, 1e-14) / kPi / (1.0 - rho);
    EXPECT_NEAR(detail::carleson_energy(dg, a, grid, 64), want, 1e-10 * want);
  }
  // the centre a = 0 covers the whole disc
  const double e0 = detail::carleson_energy(derivative(PowerSeries{0.0, 1.0}), cplx{}, grid, 64);
  EXPECT_NEAR(e0, 0.5, 1e-13);
  const double bmoa = norm(PowerSeries{0.0, 1.0}, SpaceId::bmoa()).value;
  EXPECT_GE(bmoa, std::sqrt(0.5) * (1.0 - 1e-12));
  EXPECT_TRUE(std::isfinite(bmoa));
}

TEST(Pairings, A2BetaMomentsAndAreaIntegral) {
  for (double beta : {0.0, 0.5, 2.0}) {
    for (std::size_t n : {0u, 1u, 7u, 50u}) {
      EXPECT_NEAR(a2beta_moment(n, beta), (beta + 1.0) * boost::math::beta(n + 1.0, beta + 1.0),
                  1e-12 * a2beta_moment(n, beta));
    }
  }
  // direct area integral (beta + 1) int_D f conj(g) (1 - |z|^2)^beta dA
  const PowerSeries f{1.0, cplx{0.0, 1.0}, 0.5}, g{0.25, 2.0, cplx{1.0, -1.0}};
  const double beta = 0.5;
  auto part = [&](bool imag) {
    auto radial = [&](double r) {
      auto ang = [&](double t) {
        const cplx z = std::polar(r, t);
        const cplx v = evaluate(f, z) * std::conj(evaluate(g, z));
        return imag ? v.imag() : v.real();
      };
      return bq::trapezoidal(ang, 0.0, 2.0 * kPi, 1e-13) * std::pow(1.0 - r * r, beta) * r;
    };
    bq::tanh_sinh<double> ts;
    return (beta + 1.0) * ts.integrate(radial, 0.0, 1.0) / kPi;
  };
  const cplx want{part(false), part(true)};
  EXPECT_NEAR(std::abs(pairing_a2beta(f, g, beta) - want), 0.0, 1e-10);
  EXPECT_THROW(pairing_a2beta(f, g, -1.0), std::invalid_argument);
}

TEST(Pairings, GreenPairingEqualsH2Pairing) {
  std::mt19937_64 rng(26);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_polynomial(rng, 1 + t), g = random_polynomial(rng, 32 - t);
    const cplx h2 = pairing_h2(f, g);
    EXPECT_LE(std::abs(green_pairing(f, g) - h2), 1e-6 * (1.0 + std::abs(h2)));
  }
}

TEST(Pairings, MomentWAgainstQuadrature) {
  bq::tanh_sinh<double> ts;
  for (double p : {1.0, 0.5, 2.0 / 3.0}) {
    for (std::size_t n : {0u, 3u, 40u}) {
      auto f = [&](double r) { return std::pow(r, 2.0 * n + 1.0) * std::pow(1.0 - r * r, 1.0 / p - 1.0); };
      const double q = ts.integrate(f, 0.0, 1.0);
      EXPECT_NEAR(moment_w(n, p), q, 1e-11 * q);
    }
  }
}

TEST(IntegralMean, IncreasingInRadius) {
  std::mt19937_64 rng(27);
  for (int t = 0; t < 5; ++t) {
    const auto f = random_polynomial(rng, 30);
    for (double p : {0.5, 1.0, 3.0, std::numeric_limits<double>::infinity()}) {
      double prev = 0.0;
      for (double r = 0.0; r <= 1.0; r += 0.125) {
        const double v = integral_mean(f, r, p, 256);
        EXPECT_GE(v, prev * (1.0 - 1e-12));
        prev = v;
      }
    }
  }
  EXPECT_THROW(integral_mean(PowerSeries{1.0}, 0.5, -1.0, 16), std::invalid_argument);
}

TEST(NormEstimate, JsonShape) {
  const auto e = norm(PowerSeries{1.0, 1.0}, SpaceId::hardy(3.0));
  const auto j = to_json(e);
  for (const char* k : {"value", "space", "param", "grid", "tail_bound", "exact"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["space"], "Hp");
  EXPECT_EQ(j["param"], 3.0);
  EXPECT_TRUE(j["grid"].contains("radial_rule"));
  EXPECT_TRUE(to_json(norm(PowerSeries{1.0}, SpaceId::bmoa()))["param"].is_null());
}
