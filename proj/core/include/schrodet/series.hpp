#pragma once

#include <vector>

#include "schrodet/piecewise.hpp"

namespace schrodet {

/// Fourier coefficients of log(f(x) - 2 cos t) in t at a fixed x. The symbol
/// factorizes as rho (1 - e^{it}/rho)(1 - e^{-it}/rho) with rho = rho(f(x)),
/// giving the closed forms V_0 = log rho and V_k = -rho^{-|k|}/|k|. The
/// symbol is even in t, so V_k = V_{-k}.
struct FourierLogCoefficients {
  double x = 0.0;
  double rho_x = 0.0;
  int truncation = 0;  // K

  /// V_k for any |k| <= K.
  double coefficient(int k) const;

  /// Bound on |V_k| summed beyond K: rho^{-K} / (K (1 - 1/rho)).
  double tail_bound() const;

  std::vector<double> v;  // v[k] = V_k, k = 0..K
};

FourierLogCoefficients fourier_coefficients(const PiecewisePotential& f, double x, int K);

struct MsConstant {
  double value = 0.0;             // E(f) with the series truncated at K
  double truncation_bound = 0.0;  // bound on the truncation error of log E
  int truncation = 0;             // K actually used
};

/// Truncation order that forces rho_min^{-2K} below 1e-12 with headroom.
int default_truncation_order(double rho_min);

/// The series constant
///   E(f) = exp (1/2) { V_0(f;0) + V_0(f;1)
///                      + sum_k k V_k V_{-k}(0) + sum_k k V_k V_{-k}(1) },
/// evaluated verbatim with truncation at K (K <= 0 picks the default order).
/// E depends on f only through f(0) and f(1). Diagnostic only: for constant
/// potentials this display evaluates to rho^3/(rho^2-1) while the determinant
/// limit is rho^2/(rho^2-1); the determinant sweep sides with the latter.
MsConstant ms_constant(const PiecewisePotential& f, int K = 0);

}  // namespace schrodet
