#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "corpus.hpp"
#include "oracles.hpp"
#include "schrodet/asymptotics.hpp"
#include "schrodet/errors.hpp"
#include "schrodet/kahan.hpp"
#include "schrodet/matrix.hpp"
#include "schrodet/piecewise.hpp"

using namespace schrodet;

TEST_CASE("build samples the shifted grid") {
  const PiecewisePotential c3 = parse_potential(corpus::kConstant3);
  const SchrodingerMatrix m = build_matrix(c3, 3, 1.0);
  CHECK(m.diag == std::vector<double>{3.0, 3.0, 3.0});

  const PiecewisePotential lin = parse_potential("piece [0, 1]: x + 3\n");
  const SchrodingerMatrix a = build_matrix(lin, 2, 1.0);
  CHECK(a.diag[0] == doctest::Approx(3.5).epsilon(1e-16));
  CHECK(a.diag[1] == doctest::Approx(4.0).epsilon(1e-16));

  const SchrodingerMatrix b = build_matrix(lin, 2, 0.0);
  CHECK(b.diag[0] == doctest::Approx(3.0).epsilon(1e-16));
  CHECK(b.diag[1] == doctest::Approx(3.5).epsilon(1e-16));
}

TEST_CASE("build rejects shifts that leave the domain") {
  // Jump potentials live on [0,1]; a shift of 5 pushes samples past 1.
  const PiecewisePotential f = parse_potential(corpus::ff_source("0.5", "left"));
  CHECK_THROWS_AS(build_matrix(f, 100, 5.0), ValidationError);
  CHECK_THROWS_AS(build_matrix(f, 0, 1.0), ValidationError);
  CHECK_THROWS_AS(build_matrix(f, 4, 1.0, 2), ValidationError);
}

TEST_CASE("log determinant: small constant cases") {
  const PiecewisePotential c3 = parse_potential(corpus::kConstant3);
  CHECK(det_log(build_matrix(c3, 2)).log_det == doctest::Approx(std::log(8.0)).epsilon(1e-14));
  // D_5 for f = 3 is 144 (the Fibonacci-like sequence 3, 8, 21, 55, 144),
  // confirmed by the cofactor oracle below.
  const double d5 = std::exp(det_log(build_matrix(c3, 5)).log_det);
  CHECK(d5 == doctest::Approx(144.0).epsilon(1e-12));
  const double oracle = oracles::cofactor_determinant(oracles::dense(build_matrix(c3, 5)));
  CHECK(oracle == doctest::Approx(144.0).epsilon(1e-12));
}

TEST_CASE("constant-potential determinants match the Chebyshev closed form") {
  for (double a : {2.5, 3.0, 5.0, 10.0}) {
    const PiecewisePotential f = parse_potential("piece [0, 1]: " + std::to_string(a) + "\n");
    for (int n = 1; n <= 200; ++n) {
      const double got = det_log(build_matrix(f, n)).log_det;
      const double want = oracles::chebyshev_log_det(a, n);
      // |exp(got)/exp(want) - 1| <= 1e-10, compared in log space so a = 10,
      // n = 200 cannot overflow.
      CHECK(std::abs(std::expm1(got - want)) <= 1e-10);
    }
  }
}

TEST_CASE("ratio for the constant potential") {
  const PiecewisePotential c3 = parse_potential(corpus::kConstant3);
  const double g_log = geometric_mean_log(c3);
  CHECK(det_ratio(c3, 50, 1.0, g_log) == doctest::Approx(1.1708203932499369).epsilon(1e-12));
  CHECK(det_ratio(c3, 1, 1.0, g_log) == doctest::Approx(1.1458980337503155).epsilon(1e-12));
}

TEST_CASE("determinant equals cofactor expansion for random potentials") {
  std::mt19937 rng(611953);
  for (int trial = 0; trial < 50; ++trial) {
    const std::string src = (trial % 2 == 0) ? oracles::random_smooth_source(rng)
                                             : oracles::random_jump_source(rng);
    CAPTURE(src);
    const PiecewisePotential f = parse_potential(src);
    for (int n = 1; n <= 8; ++n) {
      const int sign = (trial % 4 < 2) ? -1 : 1;
      const SchrodingerMatrix m = build_matrix(f, n, 1.0, sign);
      const double got = std::exp(det_log(m).log_det);
      const double want = oracles::cofactor_determinant(oracles::dense(m));
      CHECK(std::abs(got - want) <= 1e-9 * std::abs(want));
    }
  }
}

TEST_CASE("determinant is invariant under the off-diagonal sign") {
  const PiecewisePotential f = parse_potential(corpus::ff_source("0.5", "right"));
  for (int n : {1, 2, 7, 40}) {
    const double minus = det_log(build_matrix(f, n, 1.0, -1)).log_det;
    const double plus = det_log(build_matrix(f, n, 1.0, +1)).log_det;
    CHECK(minus == plus);
  }
}

TEST_CASE("recurrence breakdown reports corrupted input") {
  SchrodingerMatrix m;
  m.n = 1;
  m.diag = {0.5};  // r_1 in (0, 1]
  CHECK_THROWS_AS(det_log(m), NumericalError);

  m.n = 2;
  m.diag = {3.0, 1.0 / 3.0};  // r_2 = 0
  CHECK_THROWS_AS(det_log(m), NumericalError);

  m.n = 2;
  m.diag = {3.0, 0.1};  // r_2 < 0
  CHECK_THROWS_AS(det_log(m), NumericalError);
}

TEST_CASE("eigenvalues of small constant matrices") {
  const PiecewisePotential c3 = parse_potential(corpus::kConstant3);
  const auto one = eigenvalues(build_matrix(c3, 1));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == doctest::Approx(3.0).epsilon(1e-10));

  const auto three = eigenvalues(build_matrix(c3, 3));
  REQUIRE(three.size() == 3);
  CHECK(three[0] == doctest::Approx(3.0 - std::sqrt(2.0)).epsilon(1e-10));
  CHECK(three[1] == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(three[2] == doctest::Approx(3.0 + std::sqrt(2.0)).epsilon(1e-10));

  // lambda_k = a - 2 cos(k pi / (n+1)) for constant potentials.
  const int n = 16;
  const auto lam = eigenvalues(build_matrix(c3, n));
  for (int k = 1; k <= n; ++k) {
    const double want = 3.0 - 2.0 * std::cos(k * std::numbers::pi / (n + 1));
    CHECK(std::abs(lam[static_cast<std::size_t>(k - 1)] - want) <= 1e-9);
  }
}

TEST_CASE("eigenvalue cap is enforced") {
  const PiecewisePotential c3 = parse_potential(corpus::kConstant3);
  CHECK_THROWS_AS(eigenvalues(build_matrix(c3, 10), 1e-10, 5), ValidationError);
}

TEST_CASE("Sturm counts agree with the computed spectrum") {
  std::mt19937 rng(77001);
  for (const std::string& src :
       {std::string(corpus::kConstant3), corpus::smooth_sources()[1], corpus::ff_source("0.5", "left")}) {
    const PiecewisePotential f = parse_potential(src);
    const SchrodingerMatrix m = build_matrix(f, 96);
    const auto lam = eigenvalues(m);
    std::uniform_real_distribution<double> dist(lam.front() - 0.5, lam.back() + 0.5);
    int checked = 0;
    while (checked < 20) {
      double x = dist(rng);
      // keep x clear of eigenvalues so the strict count is unambiguous
      bool near = false;
      for (double v : lam) {
        if (std::abs(v - x) < 1e-8) near = true;
      }
      if (near) continue;
      const auto below = static_cast<int>(
          std::lower_bound(lam.begin(), lam.end(), x) - lam.begin());
      CHECK(count_below(m, x) == below);
      ++checked;
    }
  }
}

TEST_CASE("trace identities") {
  std::mt19937 rng(424242);
  for (int n : {5, 64, 512}) {
    const PiecewisePotential f = parse_potential(oracles::random_smooth_source(rng));
    const SchrodingerMatrix m = build_matrix(f, n);
    const auto lam = eigenvalues(m);
    KahanSum s1, s2, d1, d2;
    for (double v : lam) {
      s1 += v;
      s2 += v * v;
    }
    for (double d : m.diag) {
      d1 += d;
      d2 += d * d;
    }
    const double want1 = d1.value();
    const double want2 = d2.value() + 2.0 * (n - 1);
    CHECK(std::abs(s1.value() - want1) <= 1e-8 * std::abs(want1));
    CHECK(std::abs(s2.value() - want2) <= 1e-8 * std::abs(want2));
  }
}

TEST_CASE("trace_phi") {
  const PiecewisePotential c3 = parse_potential(corpus::kConstant3);
  const SchrodingerMatrix m2 = build_matrix(c3, 2);
  CHECK(trace_phi(m2, TraceFunction::power(1)) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(trace_phi(m2, TraceFunction::log()) == doctest::Approx(std::log(8.0)).epsilon(1e-10));

  CHECK_THROWS_AS(TraceFunction::power(5), ValidationError);
  CHECK_THROWS_AS(TraceFunction::power(0), ValidationError);

  // log trace equals the determinant recurrence for n up to 512.
  for (int n : {2, 64, 512}) {
    const PiecewisePotential f = parse_potential(corpus::smooth_sources()[0]);
    const SchrodingerMatrix m = build_matrix(f, n);
    const double via_trace = trace_phi(m, TraceFunction::log());
    const double via_det = det_log(m).log_det;
    CHECK(std::abs(via_trace - via_det) <= 1e-8 * std::max(1.0, std::abs(via_det)));
  }
}

TEST_CASE("second-moment trace approaches the symbol integral") {
  // For smooth f, Tr[T^2]/n -> ∫f^2 + 2 (the cosine cross term integrates
  // to zero).
  const PiecewisePotential f = parse_potential("piece [0, 1]: x + 3\n");
  const int n = 1000;
  const double lhs = trace_phi(build_matrix(f, n), TraceFunction::power(2)) / n;
  const double want = 37.0 / 3.0 + 2.0;  // ∫(x+3)^2 = 37/3
  CHECK(std::abs(lhs - want) <= 5e-3);
}
