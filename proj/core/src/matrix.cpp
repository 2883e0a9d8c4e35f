#include "schrodet/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "schrodet/errors.hpp"
#include "schrodet/kahan.hpp"

namespace schrodet {

SchrodingerMatrix build_matrix(const PiecewisePotential& f, int n, double epsilon,
                               int offdiag_sign) {
  if (n < 1) throw ValidationError("matrix order must be positive");
  if (offdiag_sign != 1 && offdiag_sign != -1) {
    throw ValidationError("off-diagonal sign must be +1 or -1");
  }
  SchrodingerMatrix m;
  m.n = n;
  m.offdiag_sign = offdiag_sign;
  m.epsilon = epsilon;
  m.diag.resize(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const double x = (static_cast<double>(k - 1) + epsilon) / n;
    try {
      m.diag[static_cast<std::size_t>(k - 1)] = f.eval(x, Approach::at);
    } catch (const ValidationError& e) {
      throw ValidationError("sample point (k-1+eps)/n for k = " + std::to_string(k) +
                            " left the potential domain (shift too large?): " + e.what());
    }
  }
  return m;
}

DeterminantResult det_log(const SchrodingerMatrix& m) {
  if (m.n < 1 || m.diag.size() != static_cast<std::size_t>(m.n)) {
    throw ValidationError("malformed matrix");
  }
  KahanSum acc;
  double r = m.diag[0];
  for (int k = 0; k < m.n; ++k) {
    if (k > 0) r = m.diag[static_cast<std::size_t>(k)] - 1.0 / r;
    if (r <= 0.0) {
      throw NumericalError("minor ratio r_" + std::to_string(k + 1) +
                           " <= 0; input is not a matrix of a valid potential");
    }
    if (r <= 1.0) {
      // Provably r_k > 1 when every d_k > 2; reaching here means the input
      // was corrupted after build_matrix.
      throw NumericalError("minor ratio r_" + std::to_string(k + 1) +
                           " <= 1 violates the d_k > 2 invariant");
    }
    acc += std::log(r);
  }
  DeterminantResult out;
  out.n = m.n;
  out.log_det = acc.value();
  out.ratio_log = std::numeric_limits<double>::quiet_NaN();
  return out;
}

DeterminantResult det_log(const SchrodingerMatrix& m, double g_log) {
  DeterminantResult out = det_log(m);
  out.ratio_log = out.log_det - static_cast<double>(m.n) * g_log;
  return out;
}

double det_ratio(const PiecewisePotential& f, int n, double epsilon, double g_log,
                 int offdiag_sign) {
  const SchrodingerMatrix m = build_matrix(f, n, epsilon, offdiag_sign);
  return std::exp(det_log(m, g_log).ratio_log);
}

namespace {

// Smallest pivot magnitude used in the Sturm recurrence; zero pivots are
// nudged negative as in LAPACK's bisection kernels.
constexpr double kPivMin =
    std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();

}  // namespace

int count_below(const SchrodingerMatrix& m, double x) {
  // e_k^2 = 1 regardless of the off-diagonal sign.
  int count = 0;
  double q = 1.0;
  for (int k = 0; k < m.n; ++k) {
    q = (k == 0) ? m.diag[0] - x : m.diag[static_cast<std::size_t>(k)] - x - 1.0 / q;
    if (std::abs(q) < kPivMin) q = -kPivMin;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> eigenvalues(const SchrodingerMatrix& m, double abs_tol, int cap) {
  if (m.n > cap) {
    throw ValidationError("matrix order " + std::to_string(m.n) +
                          " exceeds the eigensolver cap " + std::to_string(cap));
  }
  if (!(abs_tol > 0)) throw ValidationError("eigenvalue tolerance must be positive");

  const auto [dmin, dmax] = std::minmax_element(m.diag.begin(), m.diag.end());
  double lo = *dmin - 2.0 - abs_tol;
  double hi = *dmax + 2.0 + abs_tol;

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m.n));

  // Depth-first interval splitting: each stack entry holds [lo, hi) with the
  // Sturm counts at both ends; emit midpoints once the width is below 2*tol.
  struct Interval {
    double lo, hi;
    int clo, chi;
  };
  std::vector<Interval> stack{{lo, hi, count_below(m, lo), count_below(m, hi)}};
  while (!stack.empty()) {
    const Interval iv = stack.back();
    stack.pop_back();
    const int k = iv.chi - iv.clo;
    if (k <= 0) continue;
    if (iv.hi - iv.lo < 2.0 * abs_tol) {
      const double mid = 0.5 * (iv.lo + iv.hi);
      for (int i = 0; i < k; ++i) out.push_back(mid);
      continue;
    }
    const double mid = 0.5 * (iv.lo + iv.hi);
    const int cmid = count_below(m, mid);
    // Push the upper half first so eigenvalues come out ascending.
    stack.push_back({mid, iv.hi, cmid, iv.chi});
    stack.push_back({iv.lo, mid, iv.clo, cmid});
  }
  return out;
}

TraceFunction TraceFunction::power(int p) {
  if (p < 1 || p > 4) throw ValidationError("trace power must be in 1..4");
  return TraceFunction(p);
}

TraceFunction TraceFunction::log() { return TraceFunction(0); }

double TraceFunction::operator()(double s) const {
  switch (power_) {
    case 0:
      return std::log(s);
    case 1:
      return s;
    case 2:
      return s * s;
    case 3:
      return s * s * s;
    default:
      return (s * s) * (s * s);
  }
}

double trace_phi(const SchrodingerMatrix& m, const TraceFunction& phi, int cap) {
  const std::vector<double> lam = eigenvalues(m, 1e-10, cap);
  if (phi.is_log() && !lam.empty() && lam.front() <= 0.0) {
    throw NumericalError("log trace needs a positive spectrum");
  }
  KahanSum acc;
  for (double v : lam) acc += phi(v);
  return acc.value();
}

}  // namespace schrodet
