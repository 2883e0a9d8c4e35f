#pragma once

#include "schrodet/piecewise.hpp"

namespace schrodet {

/// Sides of one summation lemma at one n: the brute-force sum, the
/// closed-form approximation, and their difference. residual * n stays
/// bounded as n grows when g satisfies the lemma's smoothness hypotheses.
struct SumComparison {
  int n = 0;
  double exact_sum = 0.0;
  double formula_value = 0.0;
  double residual = 0.0;  // exact - formula
};

/// Brute-force sum_{k=1}^{n-1} g(k/n), ascending k, compensated accumulation.
double exact_sum(const PiecewiseFunction& g, int n);

/// Brute-force sum_{k=1}^{n-1} g((k-1+epsilon)/n).
double exact_sum_shifted(const PiecewiseFunction& g, int n, double epsilon);

/// Endpoint formula n ∫_0^1 g - (g(0)+g(1))/2 for smooth g; approximates
/// exact_sum to O(1/n). Throws ValidationError when g has jumps.
double em_formula(const PiecewiseFunction& g, int n);

/// Shifted-grid formula n ∫_0^1 g + (eps - 3/2) g(1) + (1/2 - eps) g(0);
/// approximates exact_sum_shifted to O(1/n). Requires smooth g.
double shifted_formula(const PiecewiseFunction& g, int n, double epsilon);

/// Jump-corrected formula: the endpoint formula plus
/// sum_j (e_j(n) - 1/2)(g(c_j+) - g(c_j-)) with e_j = {n c_j} for
/// left-continuous jumps and {n c_j}' for right-continuous ones. Reduces to
/// em_formula when g is continuous.
double jump_formula(const PiecewiseFunction& g, int n);

/// exact_sum vs the applicable formula (jump_formula when g has jumps).
SumComparison compare_sum(const PiecewiseFunction& g, int n);

/// exact_sum_shifted vs shifted_formula.
SumComparison compare_sum_shifted(const PiecewiseFunction& g, int n, double epsilon);

}  // namespace schrodet
