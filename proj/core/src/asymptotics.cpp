#include "schrodet/asymptotics.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "schrodet/errors.hpp"
#include "schrodet/quadrature.hpp"

namespace schrodet {

double rho(double v) {
  if (!(v > 2.0)) {
    throw ValidationError("rho requires v > 2, got " + std::to_string(v));
  }
  return 0.5 * (v + std::sqrt(v * v - 4.0));
}

double geometric_mean_log(const PiecewisePotential& f) {
  const auto cuts = f.fn().interior_breakpoints(0.0, 1.0);
  return integrate_with_breakpoints(
      [&](double x, Approach ap) { return std::log(rho(f.eval(x, ap))); }, 0.0, 1.0, cuts,
      1e-12);
}

PiecewiseFunction log_rho_function(const PiecewisePotential& f) {
  std::vector<PieceSpec> specs;
  specs.reserve(f.fn().pieces().size());
  for (const Piece& p : f.fn().pieces()) {
    // log((E + sqrt(E^2 - 4)) / 2)
    const Expr e = p.expr;
    const Expr body = Expr::div(
        Expr::add(e, Expr::sqrt(Expr::sub(Expr::pow(e, 2), Expr::number(4)))), Expr::number(2));
    specs.push_back(PieceSpec{p.lo, p.hi, Expr::log(body)});
  }
  return PiecewiseFunction(f.lo(), f.hi(), std::move(specs), f.jumps());
}

namespace {

// Endpoint data entering every closed form: one-sided values at 0 and 1.
struct Endpoints {
  double f0, f1;
};

Endpoints endpoint_values(const PiecewisePotential& f) {
  return {f.eval(0.0, Approach::right), f.eval(1.0, Approach::left)};
}

double alpha_formula(double f0, double f1, double epsilon) {
  const double s0 = std::sqrt(f0 * f0 - 4.0);
  const double s1 = std::sqrt(f1 * f1 - 4.0);
  const double denom = 2.0 * std::pow((f0 * f0 - 4.0) * (f1 * f1 - 4.0), 0.25);
  return std::pow(f0 + s0, 1.0 - epsilon) * std::pow(f1 + s1, epsilon) / denom;
}

}  // namespace

double kac_limit(const PiecewisePotential& f) {
  if (!f.smooth()) {
    throw ValidationError("kac_limit requires a potential without jumps; use jump predictions");
  }
  const auto [f0, f1] = endpoint_values(f);
  return alpha_formula(f0, f1, 1.0);
}

double shifted_limit(const PiecewisePotential& f, double epsilon) {
  if (!f.smooth()) {
    throw ValidationError("shifted_limit requires a potential without jumps");
  }
  const auto [f0, f1] = endpoint_values(f);
  return alpha_formula(f0, f1, epsilon);
}

double frac(double x) { return x - std::floor(x); }

double frac_prime(double x) { return 1.0 + x - std::ceil(x); }

JumpParameters jump_parameters(const PiecewisePotential& f, std::size_t j) {
  const auto& jumps = f.jumps();
  if (j >= jumps.size()) {
    throw ValidationError("jump index " + std::to_string(j) + " out of range (potential has " +
                          std::to_string(jumps.size()) + " jumps)");
  }
  const double c = jumps[j].position;
  const double fm = f.eval(c, Approach::left);
  const double fp = f.eval(c, Approach::right);
  const double sm = std::sqrt(fm * fm - 4.0);
  const double sp = std::sqrt(fp * fp - 4.0);
  JumpParameters out;
  out.beta = (fm - fp + sp + sm) / (2.0 * std::pow((fp * fp - 4.0) * (fm * fm - 4.0), 0.25));
  out.gamma = (fp + sp) / (fm + sm);
  return out;
}

AsymptoticPrediction make_prediction(const PiecewisePotential& f, double epsilon) {
  AsymptoticPrediction p;
  p.g_log = geometric_mean_log(f);
  p.epsilon = epsilon;
  const auto [f0, f1] = endpoint_values(f);
  p.alpha = alpha_formula(f0, f1, epsilon);
  for (std::size_t j = 0; j < f.jumps().size(); ++j) {
    const JumpParameters jp = jump_parameters(f, j);
    p.jumps.push_back(PredictionJump{f.jumps()[j].position, f.jumps()[j].side, jp.beta, jp.gamma});
  }
  return p;
}

double AsymptoticPrediction::operator()(std::int64_t n) const { return jump_prediction(*this, n); }

double jump_prediction(const AsymptoticPrediction& p, std::int64_t n) {
  double value = p.alpha;
  for (const PredictionJump& j : p.jumps) {
    const double nc = static_cast<double>(n) * j.position;
    const double e = (j.side == Side::left) ? frac(nc) : frac_prime(nc);
    value *= j.beta * std::pow(j.gamma, e);
  }
  return value;
}

std::optional<std::pair<std::int64_t, std::int64_t>> detect_rational(double c,
                                                                     std::int64_t max_denominator,
                                                                     double tol) {
  for (std::int64_t q = 1; q <= max_denominator; ++q) {
    const double scaled = c * static_cast<double>(q);
    const double p = std::round(scaled);
    if (std::abs(c - p / static_cast<double>(q)) < tol) {
      return std::make_pair(static_cast<std::int64_t>(p), q);
    }
  }
  return std::nullopt;
}

Envelope envelope(const AsymptoticPrediction& p) {
  double sup = p.alpha;
  double inf = p.alpha;
  for (const PredictionJump& j : p.jumps) {
    // Extreme attained exponents of gamma for this jump.
    double e_lo, e_hi;
    if (const auto pq = detect_rational(j.position)) {
      const double q = static_cast<double>(pq->second);
      if (j.side == Side::right) {
        e_lo = 1.0 / q;
        e_hi = 1.0;
      } else {
        e_lo = 0.0;
        e_hi = (q - 1.0) / q;
      }
    } else {
      e_lo = 0.0;
      e_hi = 1.0;
    }
    const double a = j.beta * std::pow(j.gamma, e_lo);
    const double b = j.beta * std::pow(j.gamma, e_hi);
    sup *= std::max(a, b);
    inf *= std::min(a, b);
  }
  return Envelope{sup, inf, p.jumps.size() > 1};
}

}  // namespace schrodet
