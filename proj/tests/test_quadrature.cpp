#include <doctest.h>

#include <cmath>
#include <numbers>

#include "corpus.hpp"
#include "schrodet/errors.hpp"
#include "schrodet/kahan.hpp"
#include "schrodet/quadrature.hpp"

using namespace schrodet;

TEST_CASE("compensated accumulation survives cancellation") {
  KahanSum acc;
  acc += 1.0;
  acc += 1e100;
  acc += 1.0;
  acc += -1e100;
  CHECK(acc.value() == 2.0);  // naive summation yields 0

  KahanSum tiny;
  tiny += 1.0;
  for (int i = 0; i < 100000; ++i) tiny += 1e-17;
  CHECK(tiny.value() == doctest::Approx(1.0 + 1e-12).epsilon(1e-15));
}

TEST_CASE("adaptive simpson on known integrals") {
  CHECK(adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(std::abs(adaptive_simpson([](double x) { return std::sin(x); }, 0.0,
                                  2.0 * std::numbers::pi)) <= 1e-12);
  CHECK(adaptive_simpson([](double x) { return std::exp(x); }, 0.0, 1.0) ==
        doctest::Approx(std::numbers::e - 1.0).epsilon(1e-13));
  CHECK(adaptive_simpson([](double) { return 2.5; }, 1.0, 1.0) == 0.0);
}

TEST_CASE("depth exhaustion is a numerical error") {
  CHECK_THROWS_AS(adaptive_simpson([](double x) { return std::sin(50.0 * x); }, 0.0, 3.0,
                                   1e-14, 2),
                  NumericalError);
  CHECK_THROWS_AS(adaptive_simpson([](double x) { return 1.0 / x; }, 0.0, 1.0),
                  NumericalError);  // integrand infinite at an endpoint
}

TEST_CASE("breakpoint splitting integrates discontinuous integrands") {
  // step: 3 on [0, 1/2], 5 on (1/2, 1]; exact integral 4. Without the split
  // the discontinuity sits mid-panel; with it, each panel is constant.
  const PiecewiseFunction g = parse_piecewise(corpus::step_source(3.0, 5.0, "0.5", "left"));
  CHECK(integrate(g, 0.0, 1.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(integrate(g, 0.0, 0.5) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(integrate(g, 0.25, 0.75) == doctest::Approx(2.0).epsilon(1e-14));

  const double cuts[] = {0.5};
  const double direct = integrate_with_breakpoints(
      [&](double x, Approach ap) { return g.eval(x, ap); }, 0.0, 1.0, cuts, 1e-12);
  CHECK(direct == doctest::Approx(4.0).epsilon(1e-14));
}
