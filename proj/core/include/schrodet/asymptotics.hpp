#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "schrodet/piecewise.hpp"

namespace schrodet {

/// The larger root of r + 1/r = v, i.e. (v + sqrt(v^2 - 4))/2. Strictly
/// increasing, > 1 for v > 2. Throws ValidationError for v <= 2.
double rho(double v);

/// log G(f) where G(f) = exp ∫_0^1 log rho(f(x)) dx, the geometric mean of
/// the symbol f(x) - 2 cos t. Adaptive quadrature split at every jump and
/// piece boundary, absolute tolerance 1e-12.
double geometric_mean_log(const PiecewisePotential& f);

/// log rho composed with f, piece by piece, as a symbolic piecewise function
/// (log((E + sqrt(E^2 - 4))/2) on each piece). Jumps carry over.
PiecewiseFunction log_rho_function(const PiecewisePotential& f);

/// The smooth-potential determinant limit
///   alpha = (1/2) (f(1) + sqrt(f(1)^2-4)) / ((f(0)^2-4)(f(1)^2-4))^(1/4).
/// Requires a potential without jumps; use jump predictions otherwise.
double kac_limit(const PiecewisePotential& f);

/// The index-shifted limit
///   (f(0)+sqrt(f(0)^2-4))^(1-eps) (f(1)+sqrt(f(1)^2-4))^eps
///   / (2 ((f(0)^2-4)(f(1)^2-4))^(1/4)).
/// Equals kac_limit at eps = 1. Requires a smooth potential.
double shifted_limit(const PiecewisePotential& f, double epsilon);

/// Fractional part x - floor(x), in [0, 1).
double frac(double x);

/// The ceiling variant 1 + x - ceil(x), in (0, 1]; equal to 1 at integers.
double frac_prime(double x);

struct JumpParameters {
  double beta;
  double gamma;
};

/// Per-jump correction factors from the one-sided limits at jump j:
///   beta = (f(c-) - f(c+) + sqrt(f(c+)^2-4) + sqrt(f(c-)^2-4))
///          / (2 ((f(c+)^2-4)(f(c-)^2-4))^(1/4)),
///   gamma = (f(c+) + sqrt(f(c+)^2-4)) / (f(c-) + sqrt(f(c-)^2-4)).
/// Both are 1 when f is continuous at c.
JumpParameters jump_parameters(const PiecewisePotential& f, std::size_t j);

struct PredictionJump {
  double position;
  Side side;
  double beta;
  double gamma;
};

/// Everything needed to evaluate the predicted ratio det/G^n at any n:
/// alpha * prod_j beta_j gamma_j^{e_j(n)} with e_j = {n c_j} for
/// left-continuous jumps and {n c_j}' for right-continuous ones.
struct AsymptoticPrediction {
  double g_log = 0.0;
  double alpha = 0.0;
  double epsilon = 1.0;  // index shift used for alpha
  std::vector<PredictionJump> jumps;

  double operator()(std::int64_t n) const;
};

/// Builds the prediction for a potential. alpha uses the one-sided endpoint
/// values f(0+), f(1-) and the shifted-limit form (so smooth sweeps with any
/// shift converge to it; eps = 1 is the unshifted grid).
AsymptoticPrediction make_prediction(const PiecewisePotential& f, double epsilon = 1.0);

double jump_prediction(const AsymptoticPrediction& p, std::int64_t n);

/// Smallest q <= max_denominator with |c - round(c q)/q| < tol, if any.
/// Floating point cannot distinguish rationals from irrationals exactly;
/// this scan is the documented approximation.
std::optional<std::pair<std::int64_t, std::int64_t>> detect_rational(
    double c, std::int64_t max_denominator = 1'000'000, double tol = 1e-9);

struct Envelope {
  double limsup;
  double liminf;
  /// Set when the bounds come from the per-jump product generalization
  /// (more than one jump); the single-jump case is exact.
  bool extrapolated;
};

/// limsup/liminf of the predicted ratio over n.
///
/// For one jump at rational c = p/q the attained exponent set of {nc} is
/// {0, 1/q, .., (q-1)/q} (left-continuous) or {1/q, .., 1} (right-continuous,
/// via {nc}'), so the bounds are alpha*beta*max/min over the extreme
/// exponents; gamma^{1/q} and gamma for right-continuous jumps, 1 and
/// gamma^{(q-1)/q} for left-continuous ones. For irrational c the exponents
/// are dense in (0,1) and the bounds use 1 and gamma. Multiple jumps take
/// the product of per-jump extrema and are flagged as extrapolated bounds.
Envelope envelope(const AsymptoticPrediction& p);

}  // namespace schrodet
