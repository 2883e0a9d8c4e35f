#include "schrodet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "schrodet/errors.hpp"

namespace schrodet {

namespace {

double simpson(double h, double fa, double fm, double fb) {
  return (fa + 4.0 * fm + fb) * (h / 6.0);
}

double simpson_rec(const std::function<double(double)>& f, double a, double m, double b,
                   double fa, double fm, double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(m - a, fa, flm, fm);
  const double right = simpson(b - m, fm, frm, fb);
  const double err = left + right - whole;
  if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
  if (depth <= 0) throw NumericalError("quadrature did not converge");
  return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb)) {
    throw NumericalError("integrand not finite");
  }
  const double whole = simpson(b - a, fa, fm, fb);
  return simpson_rec(f, a, m, b, fa, fm, fb, whole, abs_tol, max_depth);
}

double integrate_with_breakpoints(const std::function<double(double, Approach)>& f, double a,
                                  double b, std::span<const double> breakpoints, double abs_tol,
                                  int max_depth) {
  std::vector<double> cuts{a};
  for (double c : breakpoints) {
    if (c > a && c < b) cuts.push_back(c);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double p = cuts[i];
    const double q = cuts[i + 1];
    const auto panel = [&](double x) {
      if (x <= p) return f(p, Approach::right);
      if (x >= q) return f(q, Approach::left);
      return f(x, Approach::at);
    };
    const double tol = abs_tol * (q - p) / (b - a);
    total += adaptive_simpson(panel, p, q, tol, max_depth);
  }
  return total;
}

double integrate(const PiecewiseFunction& g, double a, double b, double abs_tol) {
  const auto cuts = g.interior_breakpoints(a, b);
  return integrate_with_breakpoints(
      [&](double x, Approach ap) { return g.eval(x, ap); }, a, b, cuts, abs_tol);
}

}  // namespace schrodet
