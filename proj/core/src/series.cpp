#include "schrodet/series.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "schrodet/asymptotics.hpp"
#include "schrodet/errors.hpp"
#include "schrodet/kahan.hpp"

namespace schrodet {

double FourierLogCoefficients::coefficient(int k) const {
  const int a = std::abs(k);
  if (a > truncation) {
    throw ValidationError("coefficient index " + std::to_string(k) + " beyond truncation " +
                          std::to_string(truncation));
  }
  return v[static_cast<std::size_t>(a)];
}

double FourierLogCoefficients::tail_bound() const {
  return std::pow(rho_x, -truncation) / (truncation * (1.0 - 1.0 / rho_x));
}

FourierLogCoefficients fourier_coefficients(const PiecewisePotential& f, double x, int K) {
  if (K < 1) throw ValidationError("truncation order must be at least 1");
  if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("x must lie in [0, 1]");
  FourierLogCoefficients out;
  out.x = x;
  out.rho_x = rho(f.eval(x));
  out.truncation = K;
  out.v.resize(static_cast<std::size_t>(K) + 1);
  out.v[0] = std::log(out.rho_x);
  for (int k = 1; k <= K; ++k) {
    out.v[static_cast<std::size_t>(k)] = -std::pow(out.rho_x, -k) / k;
  }
  return out;
}

int default_truncation_order(double rho_min) {
  // Forces rho_min^{-2K} < 1e-12 with headroom.
  const double k = -6.0 * std::log(10.0) / std::log(std::pow(rho_min, -2.0));
  return static_cast<int>(std::ceil(k)) + 5;
}

namespace {

// sum_{k=1}^{K} k V_k V_{-k} = sum_{k=1}^{K} rho^{-2k}/k, summed smallest
// term first.
double weighted_square_sum(const FourierLogCoefficients& c) {
  KahanSum acc;
  for (int k = c.truncation; k >= 1; --k) {
    const double vk = c.coefficient(k);
    acc += k * vk * vk;
  }
  return acc.value();
}

// Tail of the series above: sum_{k>K} rho^{-2k}/k <= rho^{-2(K+1)} /
// ((K+1)(1 - rho^{-2})).
double series_tail(double rho_x, int K) {
  return std::pow(rho_x, -2.0 * (K + 1)) / ((K + 1) * (1.0 - std::pow(rho_x, -2.0)));
}

}  // namespace

MsConstant ms_constant(const PiecewisePotential& f, int K) {
  const double r0 = rho(f.eval(0.0, Approach::right));
  const double r1 = rho(f.eval(1.0, Approach::left));
  if (K <= 0) K = default_truncation_order(std::min(r0, r1));

  const FourierLogCoefficients c0 = fourier_coefficients(f, 0.0, K);
  const FourierLogCoefficients c1 = fourier_coefficients(f, 1.0, K);

  const double exponent =
      0.5 * (c0.coefficient(0) + c1.coefficient(0) + weighted_square_sum(c0) +
             weighted_square_sum(c1));
  MsConstant out;
  out.value = std::exp(exponent);
  out.truncation_bound = 0.5 * (series_tail(c0.rho_x, K) + series_tail(c1.rho_x, K));
  out.truncation = K;
  return out;
}

}  // namespace schrodet
