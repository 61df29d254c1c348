// Walk through the operator T_g for g = z + z^2/4 + z^3/9: apply it, build a
// kernel slice, check T_g f(z) = <f, G_{g,z}>, and compare the p = 2
// criterion with the dual test along the positive axis.

#include <cstdio>

#include "volterra_lab/volterra_lab.hpp"

int main() {
  using namespace vlab;
  const Symbol g(PowerSeries{0.0, 1.0, 0.25, 1.0 / 9.0}, true);
  const PowerSeries f{1.0, -0.5, cplx{0.0, 2.0}};

  const auto h = apply_tg(g, f);
  std::printf("T_g f = %s\n", format_series(h).c_str());

  const cplx z{0.6, 0.3};
  const auto slice = kernel_slice(g, z, 32);
  const cplx direct = evaluate(h, z);
  const cplx paired = pairing_h2(f, slice.series);
  std::printf("T_g f(z) = %.15f%+.15fi\n<f, G>   = %.15f%+.15fi\n", direct.real(), direct.imag(), paired.real(),
              paired.imag());
  std::printf("slice tail bound: %.3e\n\n", slice.tail_bound);

  const auto crit = q_p(g, 2.0, 200000);
  const auto dt = dual_test_positive(g, SpaceId::hardy_littlewood(2.0), dyadic_xgrid(1, 14), 1 << 16);
  std::printf("q_2(g)            = %.6f (+ tail <= %.2e)\n", crit.value, *crit.tail_bound);
  std::printf("sup_x ||G||^2_HL2 = %.6f at x = %.6f\n", dt.estimate.value * dt.estimate.value, dt.argmax.real());

  std::printf("\n%6s %14s %14s\n", "x", "F(x), p=1/2", "F(x), p=2/3");
  for (std::size_t j = 2; j <= 12; j += 2) {
    const double x = 1.0 - std::ldexp(1.0, -static_cast<int>(j));
    std::printf("%6.4f %14.6f %14.6f\n", x, p_less_one_functional(0.5, x), p_less_one_functional(2.0 / 3.0, x));
  }
  return 0;
}
