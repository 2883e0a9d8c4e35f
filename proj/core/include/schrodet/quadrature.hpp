#pragma once

#include <functional>
#include <span>

#include "schrodet/piecewise.hpp"

namespace schrodet {

/// Adaptive Simpson with Richardson correction. The tolerance is absolute and
/// halves per subdivision. Throws NumericalError when max_depth subdivisions
/// do not reach the local tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-12, int max_depth = 40);

/// Integrates over [a, b] split at the given interior breakpoints, so the
/// integrand is smooth on every panel. The integrand receives an Approach
/// that is only meaningful at panel endpoints (left/right limits there, `at`
/// inside). Tolerance is distributed across panels by width.
double integrate_with_breakpoints(const std::function<double(double, Approach)>& f, double a,
                                  double b, std::span<const double> breakpoints,
                                  double abs_tol = 1e-12, int max_depth = 40);

/// ∫_a^b g, split at g's piece boundaries, with one-sided evaluation at the
/// splits.
double integrate(const PiecewiseFunction& g, double a, double b, double abs_tol = 1e-12);

}  // namespace schrodet
