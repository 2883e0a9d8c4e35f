#pragma once

#include <vector>

#include "schrodet/piecewise.hpp"

namespace schrodet {

/// Symmetric tridiagonal matrix with unit off-diagonals of a fixed sign and
/// diagonal d_k = f((k-1+epsilon)/n), k = 1..n. epsilon = 1 is the plain
/// grid f(k/n). Positive definite whenever every d_k > 2 (Gershgorin).
struct SchrodingerMatrix {
  int n = 0;
  std::vector<double> diag;
  int offdiag_sign = -1;  // -1 or +1; the determinant does not depend on it
  double epsilon = 1.0;
};

/// Samples the potential on the shifted grid. Throws ValidationError when a
/// sample point leaves the potential's domain (the shift is too large for
/// the domain).
SchrodingerMatrix build_matrix(const PiecewisePotential& f, int n, double epsilon = 1.0,
                               int offdiag_sign = -1);

struct DeterminantResult {
  int n = 0;
  double log_det = 0.0;    // natural log of det T_n
  double ratio_log = 0.0;  // log(det / G^n) when a G was supplied, else NaN
};

/// Log-determinant via the minor-ratio recurrence r_1 = d_1,
/// r_k = d_k - 1/r_{k-1}, log det = sum log r_k. Matches cofactor expansion
/// exactly but never overflows. All r_k stay above 1 when every d_k > 2;
/// violations throw NumericalError.
DeterminantResult det_log(const SchrodingerMatrix& m);
DeterminantResult det_log(const SchrodingerMatrix& m, double g_log);

/// det(T_n(f; epsilon)) / G^n computed in log space; finite at any n for
/// which the matrix can be built.
double det_ratio(const PiecewisePotential& f, int n, double epsilon, double g_log,
                 int offdiag_sign = -1);

inline constexpr int kEigenvalueCap = 4096;

/// Number of eigenvalues strictly below x (Sturm sign-change count of the
/// leading-principal-minor recurrence).
int count_below(const SchrodingerMatrix& m, double x);

/// All n eigenvalues, ascending, each to the given absolute tolerance, by
/// bisection on Sturm counts. Throws ValidationError when n exceeds cap.
std::vector<double> eigenvalues(const SchrodingerMatrix& m, double abs_tol = 1e-10,
                                int cap = kEigenvalueCap);

/// phi for trace checks: s^p with 1 <= p <= 4, or log s.
class TraceFunction {
 public:
  static TraceFunction power(int p);
  static TraceFunction log();
  double operator()(double s) const;
  bool is_log() const noexcept { return power_ == 0; }
  int power_exponent() const noexcept { return power_; }

 private:
  explicit TraceFunction(int p) : power_(p) {}
  int power_;  // 0 encodes log
};

/// Tr[phi(T_n)] = sum phi(lambda_k) over the computed spectrum. For phi =
/// log this equals det_log's log_det (a consistency check, not a shortcut).
double trace_phi(const SchrodingerMatrix& m, const TraceFunction& phi, int cap = kEigenvalueCap);

}  // namespace schrodet
