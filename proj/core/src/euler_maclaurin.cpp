#include "schrodet/euler_maclaurin.hpp"

#include <cmath>

#include "schrodet/asymptotics.hpp"
#include "schrodet/errors.hpp"
#include "schrodet/kahan.hpp"
#include "schrodet/quadrature.hpp"

namespace schrodet {

namespace {

void require_positive_n(int n) {
  if (n < 1) throw ValidationError("n must be positive");
}

double unit_integral(const PiecewiseFunction& g) { return integrate(g, 0.0, 1.0, 1e-12); }

}  // namespace

double exact_sum(const PiecewiseFunction& g, int n) {
  require_positive_n(n);
  KahanSum acc;
  for (int k = 1; k <= n - 1; ++k) {
    acc += g.eval(static_cast<double>(k) / n);
  }
  return acc.value();
}

double exact_sum_shifted(const PiecewiseFunction& g, int n, double epsilon) {
  require_positive_n(n);
  KahanSum acc;
  for (int k = 1; k <= n - 1; ++k) {
    acc += g.eval((static_cast<double>(k - 1) + epsilon) / n);
  }
  return acc.value();
}

double em_formula(const PiecewiseFunction& g, int n) {
  require_positive_n(n);
  if (!g.smooth()) throw ValidationError("em_formula requires a smooth g; use jump_formula");
  return n * unit_integral(g) - 0.5 * (g.eval(0.0) + g.eval(1.0));
}

double shifted_formula(const PiecewiseFunction& g, int n, double epsilon) {
  require_positive_n(n);
  if (!g.smooth()) throw ValidationError("shifted_formula requires a smooth g");
  return n * unit_integral(g) + (epsilon - 1.5) * g.eval(1.0) + (0.5 - epsilon) * g.eval(0.0);
}

double jump_formula(const PiecewiseFunction& g, int n) {
  require_positive_n(n);
  double value = n * unit_integral(g) - 0.5 * (g.eval(0.0) + g.eval(1.0));
  KahanSum corrections;
  for (const JumpPoint& j : g.jumps()) {
    const double nc = static_cast<double>(n) * j.position;
    const double e = (j.side == Side::left) ? frac(nc) : frac_prime(nc);
    const double gap = g.eval(j.position, Approach::right) - g.eval(j.position, Approach::left);
    corrections += (e - 0.5) * gap;
  }
  return value + corrections.value();
}

SumComparison compare_sum(const PiecewiseFunction& g, int n) {
  SumComparison out;
  out.n = n;
  out.exact_sum = exact_sum(g, n);
  out.formula_value = g.smooth() ? em_formula(g, n) : jump_formula(g, n);
  out.residual = out.exact_sum - out.formula_value;
  return out;
}

SumComparison compare_sum_shifted(const PiecewiseFunction& g, int n, double epsilon) {
  SumComparison out;
  out.n = n;
  out.exact_sum = exact_sum_shifted(g, n, epsilon);
  out.formula_value = shifted_formula(g, n, epsilon);
  out.residual = out.exact_sum - out.formula_value;
  return out;
}

}  // namespace schrodet
