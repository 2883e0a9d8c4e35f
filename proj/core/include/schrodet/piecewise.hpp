#pragma once

#include <string_view>
#include <vector>

#include "schrodet/expr.hpp"

namespace schrodet {

/// Which one-sided value a function takes at a jump discontinuity.
enum class Side { left, right };

/// How to evaluate at a point: the function's own value (honoring jump
/// sides), or a one-sided limit.
enum class Approach { at, left, right };

struct JumpPoint {
  double position = 0.0;  // strictly inside (0,1), on a piece boundary
  Side side = Side::left;
};

struct PieceSpec {
  double lo = 0.0;
  double hi = 1.0;
  Expr expr;
};

struct Piece {
  double lo;
  double hi;
  Expr expr;
  Expr dexpr;  // symbolic derivative, built once at construction
};

/// A piecewise-smooth function on a closed interval [lo, hi] ⊇ [0, 1].
///
/// Construction validates that the pieces tile the domain (boundary pieces
/// are extended to the domain ends, i.e. extrapolated by their expressions),
/// that non-jump internal boundaries are continuous to 1e-12, that declared
/// jumps sit on piece boundaries strictly inside (0,1) with finite one-sided
/// limits, and that every expression evaluates finitely on a 4096-point grid
/// per piece. Declared jumps whose gap is at most 1e-12 are treated as
/// continuous boundaries and dropped.
///
/// Immutable after construction; safe for concurrent reads.
class PiecewiseFunction {
 public:
  PiecewiseFunction(double lo, double hi, std::vector<PieceSpec> pieces,
                    std::vector<JumpPoint> jumps = {});

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  const std::vector<JumpPoint>& jumps() const noexcept { return jumps_; }
  bool smooth() const noexcept { return jumps_.empty(); }

  double eval(double x, Approach approach = Approach::at) const;
  double operator()(double x) const { return eval(x); }
  double derivative(double x, Approach approach = Approach::at) const;

  /// Minimum over the validation grid (closed endpoints included); the
  /// argmin is written to *argmin when non-null.
  double grid_min(double* argmin = nullptr) const;

  /// Piece boundaries and jump positions strictly inside (a, b), ascending.
  std::vector<double> interior_breakpoints(double a, double b) const;

  static constexpr int kGridSamplesPerPiece = 4096;
  static constexpr double kContinuityTol = 1e-12;

 private:
  const Piece& piece_for(double x, Approach approach) const;
  // One-sided evaluation without the domain checks; construction-time only.
  double eval_raw_left(double x) const;
  double eval_raw_right(double x) const;

  double lo_;
  double hi_;
  std::vector<Piece> pieces_;
  std::vector<JumpPoint> jumps_;
};

/// A validated potential: a PiecewiseFunction with the spectral floor
/// f >= 2 + floor_margin checked over the sampling grid. The floor check is
/// by dense sampling (4096 points per piece), a documented heuristic.
class PiecewisePotential {
 public:
  static constexpr double kDefaultFloorMargin = 1e-6;

  explicit PiecewisePotential(PiecewiseFunction fn,
                              double floor_margin = kDefaultFloorMargin);

  const PiecewiseFunction& fn() const noexcept { return fn_; }
  double floor_margin() const noexcept { return floor_margin_; }

  double lo() const noexcept { return fn_.lo(); }
  double hi() const noexcept { return fn_.hi(); }
  const std::vector<JumpPoint>& jumps() const noexcept { return fn_.jumps(); }
  bool smooth() const noexcept { return fn_.smooth(); }

  double eval(double x, Approach approach = Approach::at) const { return fn_.eval(x, approach); }
  double operator()(double x) const { return fn_.eval(x); }
  double derivative(double x, Approach approach = Approach::at) const {
    return fn_.derivative(x, approach);
  }

 private:
  PiecewiseFunction fn_;
  double floor_margin_;
};

/// Parses the potential grammar:
///
///   domain [lo, hi]                  (optional)
///   piece [a, b]: <expr>             (one or more)
///   jump at <c> side <left|right>    (zero or more)
///
/// Bounds and jump positions are constant expressions (e.g. `0.9 - 1/pi`).
/// `#` starts a comment. When no domain is given, smooth functions default
/// to [-0.25, 1.25] and functions with jumps to [0, 1].
PiecewiseFunction parse_piecewise(std::string_view source);

/// parse_piecewise plus the potential floor check.
PiecewisePotential parse_potential(std::string_view source,
                                   double floor_margin = PiecewisePotential::kDefaultFloorMargin);

}  // namespace schrodet
