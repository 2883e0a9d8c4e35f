#include "schrodet/piecewise.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "schrodet/errors.hpp"

namespace schrodet {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

PiecewiseFunction::PiecewiseFunction(double lo, double hi, std::vector<PieceSpec> specs,
                                     std::vector<JumpPoint> jumps)
    : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ValidationError("invalid domain [" + fmt(lo) + ", " + fmt(hi) + "]");
  }
  if (lo > 0.0 || hi < 1.0) {
    throw ValidationError("domain [" + fmt(lo) + ", " + fmt(hi) + "] must contain [0, 1]");
  }
  if (specs.empty()) throw ValidationError("at least one piece is required");
  for (const auto& s : specs) {
    if (!s.expr.valid()) throw ValidationError("piece without an expression");
    if (!std::isfinite(s.lo) || !std::isfinite(s.hi) || !(s.lo < s.hi)) {
      throw ValidationError("invalid piece interval [" + fmt(s.lo) + ", " + fmt(s.hi) + "]");
    }
  }
  std::sort(specs.begin(), specs.end(),
            [](const PieceSpec& a, const PieceSpec& b) { return a.lo < b.lo; });

  // Pieces must tile: snap boundaries that agree to 1e-12, reject the rest.
  for (std::size_t i = 1; i < specs.size(); ++i) {
    const double gap = specs[i].lo - specs[i - 1].hi;
    if (gap > kContinuityTol) {
      throw ValidationError("gap between pieces at x = " + fmt(specs[i - 1].hi));
    }
    if (gap < -kContinuityTol) {
      throw ValidationError("overlapping pieces at x = " + fmt(specs[i].lo));
    }
    specs[i].lo = specs[i - 1].hi;
  }
  // Boundary pieces extend to the domain ends (extrapolated by their
  // expressions); pieces reaching past the domain are an error.
  if (specs.front().lo < lo_ - kContinuityTol) {
    throw ValidationError("pieces extend below the domain at x = " + fmt(specs.front().lo));
  }
  if (specs.back().hi > hi_ + kContinuityTol) {
    throw ValidationError("pieces extend above the domain at x = " + fmt(specs.back().hi));
  }
  specs.front().lo = lo_;
  specs.back().hi = hi_;

  pieces_.reserve(specs.size());
  for (auto& s : specs) {
    pieces_.push_back(Piece{s.lo, s.hi, s.expr, s.expr.derivative()});
  }

  // Jumps: strictly inside (0,1), on internal piece boundaries, with finite
  // one-sided limits separated by more than 1e-12. Smaller gaps demote the
  // jump to a continuous boundary.
  std::sort(jumps.begin(), jumps.end(),
            [](const JumpPoint& a, const JumpPoint& b) { return a.position < b.position; });
  for (auto& j : jumps) {
    if (!(j.position > 0.0 && j.position < 1.0)) {
      throw ValidationError("jump point " + fmt(j.position) + " outside (0,1)");
    }
    bool matched = false;
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
      if (std::abs(pieces_[i].lo - j.position) <= kContinuityTol) {
        j.position = pieces_[i].lo;
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw ValidationError("jump at x = " + fmt(j.position) + " is not on a piece boundary");
    }
    if (!jumps_.empty() && jumps_.back().position == j.position) {
      throw ValidationError("duplicate jump at x = " + fmt(j.position));
    }
    const double vl = eval_raw_left(j.position);
    const double vr = eval_raw_right(j.position);
    if (!std::isfinite(vl) || !std::isfinite(vr)) {
      throw ValidationError("one-sided limit not finite at jump x = " + fmt(j.position));
    }
    if (std::abs(vr - vl) > kContinuityTol) jumps_.push_back(j);
  }

  // Non-jump internal boundaries must be continuous.
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    const double b = pieces_[i].lo;
    const bool is_jump = std::any_of(jumps_.begin(), jumps_.end(),
                                     [&](const JumpPoint& j) { return j.position == b; });
    if (is_jump) continue;
    const double vl = pieces_[i - 1].expr.eval(b);
    const double vr = pieces_[i].expr.eval(b);
    if (!(std::abs(vr - vl) <= kContinuityTol)) {
      throw ValidationError("pieces disagree at non-jump boundary x = " + fmt(b) +
                            " (|gap| = " + fmt(std::abs(vr - vl)) + ")");
    }
  }

  // Finiteness over the sampling grid (validates sqrt/log arguments).
  for (const auto& p : pieces_) {
    for (int k = 0; k < kGridSamplesPerPiece; ++k) {
      const double x = p.lo + (p.hi - p.lo) * k / (kGridSamplesPerPiece - 1);
      if (!std::isfinite(p.expr.eval(x))) {
        throw ValidationError("expression '" + p.expr.str() + "' not finite at x = " + fmt(x));
      }
    }
  }
}

double PiecewiseFunction::eval_raw_left(double x) const {
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
    if (it->lo < x) return it->expr.eval(x);
  }
  return pieces_.front().expr.eval(x);
}

double PiecewiseFunction::eval_raw_right(double x) const {
  for (const auto& p : pieces_) {
    if (p.hi > x) return p.expr.eval(x);
  }
  return pieces_.back().expr.eval(x);
}

const Piece& PiecewiseFunction::piece_for(double x, Approach approach) const {
  if (approach == Approach::at) {
    for (const auto& j : jumps_) {
      if (x == j.position) {
        return piece_for(x, j.side == Side::left ? Approach::left : Approach::right);
      }
    }
    for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
      if (it->lo <= x) return *it;
    }
    return pieces_.front();
  }
  if (approach == Approach::left) {
    for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
      if (it->lo < x) return *it;
    }
    return pieces_.front();
  }
  for (const auto& p : pieces_) {
    if (p.hi > x) return p;
  }
  return pieces_.back();
}

double PiecewiseFunction::eval(double x, Approach approach) const {
  if (!(x >= lo_ && x <= hi_)) {
    throw ValidationError("x = " + fmt(x) + " outside domain [" + fmt(lo_) + ", " + fmt(hi_) + "]");
  }
  if (approach == Approach::left && !(x > lo_)) {
    throw ValidationError("left limit requires x > " + fmt(lo_));
  }
  if (approach == Approach::right && !(x < hi_)) {
    throw ValidationError("right limit requires x < " + fmt(hi_));
  }
  return piece_for(x, approach).expr.eval(x);
}

double PiecewiseFunction::derivative(double x, Approach approach) const {
  if (!(x >= lo_ && x <= hi_)) {
    throw ValidationError("x = " + fmt(x) + " outside domain [" + fmt(lo_) + ", " + fmt(hi_) + "]");
  }
  if (approach == Approach::left && !(x > lo_)) {
    throw ValidationError("left limit requires x > " + fmt(lo_));
  }
  if (approach == Approach::right && !(x < hi_)) {
    throw ValidationError("right limit requires x < " + fmt(hi_));
  }
  return piece_for(x, approach).dexpr.eval(x);
}

double PiecewiseFunction::grid_min(double* argmin) const {
  double best = std::numeric_limits<double>::infinity();
  double best_x = lo_;
  for (const auto& p : pieces_) {
    for (int k = 0; k < kGridSamplesPerPiece; ++k) {
      const double x = p.lo + (p.hi - p.lo) * k / (kGridSamplesPerPiece - 1);
      const double v = p.expr.eval(x);
      if (v < best) {
        best = v;
        best_x = x;
      }
    }
  }
  if (argmin) *argmin = best_x;
  return best;
}

std::vector<double> PiecewiseFunction::interior_breakpoints(double a, double b) const {
  std::vector<double> out;
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    const double x = pieces_[i].lo;
    if (x > a && x < b) out.push_back(x);
  }
  return out;
}

PiecewisePotential::PiecewisePotential(PiecewiseFunction fn, double floor_margin)
    : fn_(std::move(fn)), floor_margin_(floor_margin) {
  if (!(floor_margin > 0)) throw ValidationError("floor margin must be positive");
  double at_x = 0;
  const double m = fn_.grid_min(&at_x);
  if (!(m > 2.0 + floor_margin)) {
    throw ValidationError("potential floor violated: f(x) = " + fmt(m) + " <= 2 + " +
                          fmt(floor_margin) + " at x = " + fmt(at_x));
  }
}

// ---------------------------------------------------------------------------
// Grammar: domain / piece / jump lines, '#' comments.

namespace {

struct Line {
  int number;
  std::string_view text;  // comment-stripped
};

std::vector<Line> split_lines(std::string_view source) {
  std::vector<Line> lines;
  int no = 1;
  std::size_t start = 0;
  while (start <= source.size()) {
    std::size_t end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    std::string_view text = source.substr(start, end - start);
    if (const auto h = text.find('#'); h != std::string_view::npos) text = text.substr(0, h);
    lines.push_back({no, text});
    ++no;
    start = end + 1;
    if (end == source.size()) break;
  }
  return lines;
}

std::size_t skip_ws(std::string_view s, std::size_t p) {
  while (p < s.size() && (s[p] == ' ' || s[p] == '\t' || s[p] == '\r')) ++p;
  return p;
}

std::string_view rtrim(std::string_view s) {
  std::size_t e = s.size();
  while (e > 0 && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(0, e);
}

// Leading keyword of a line, or empty.
std::string_view keyword(std::string_view s, std::size_t& after) {
  std::size_t p = skip_ws(s, 0);
  std::size_t q = p;
  while (q < s.size() && (std::isalpha(static_cast<unsigned char>(s[q])) || s[q] == '-')) ++q;
  after = q;
  return s.substr(p, q - p);
}

double parse_const(std::string_view text, int line, int col_base) {
  const Expr e = parse_expr_at(text, line, col_base);
  if (!is_constant(e)) throw ParseError("expected a constant expression", line, col_base);
  return e.eval(0.0);
}

// Parses "[a, b]" starting at s[p]; bounds are constant expressions. Returns
// the position just after ']'.
std::size_t parse_interval(std::string_view s, std::size_t p, int line, double& a, double& b) {
  p = skip_ws(s, p);
  if (p >= s.size() || s[p] != '[') throw ParseError("expected '['", line, static_cast<int>(p) + 1);
  int depth = 0;
  std::size_t comma = std::string_view::npos, close = std::string_view::npos;
  for (std::size_t i = p + 1; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && c == ',' && comma == std::string_view::npos) comma = i;
    if (depth == 0 && c == ']') {
      close = i;
      break;
    }
  }
  if (comma == std::string_view::npos || close == std::string_view::npos || comma > close) {
    throw ParseError("expected '[a, b]'", line, static_cast<int>(p) + 1);
  }
  a = parse_const(s.substr(p + 1, comma - p - 1), line, static_cast<int>(p) + 2);
  b = parse_const(s.substr(comma + 1, close - comma - 1), line, static_cast<int>(comma) + 2);
  return close + 1;
}

}  // namespace

PiecewiseFunction parse_piecewise(std::string_view source) {
  bool have_domain = false;
  double dom_lo = 0, dom_hi = 0;
  std::vector<PieceSpec> pieces;
  std::vector<JumpPoint> jumps;

  for (const Line& ln : split_lines(source)) {
    std::size_t after = 0;
    const std::string_view kw = keyword(ln.text, after);
    if (kw.empty()) {
      if (skip_ws(ln.text, 0) < rtrim(ln.text).size()) {
        throw ParseError("expected a directive", ln.number, static_cast<int>(after) + 1);
      }
      continue;  // blank / comment-only line
    }
    if (kw == "domain") {
      if (have_domain) throw ParseError("duplicate domain line", ln.number, 1);
      std::size_t p = parse_interval(ln.text, after, ln.number, dom_lo, dom_hi);
      if (skip_ws(ln.text, p) != rtrim(ln.text).size()) {
        throw ParseError("unexpected trailing input", ln.number, static_cast<int>(p) + 1);
      }
      have_domain = true;
    } else if (kw == "piece") {
      double a = 0, b = 0;
      std::size_t p = parse_interval(ln.text, after, ln.number, a, b);
      p = skip_ws(ln.text, p);
      if (p >= ln.text.size() || ln.text[p] != ':') {
        throw ParseError("expected ':' after piece interval", ln.number, static_cast<int>(p) + 1);
      }
      const std::string_view body = ln.text.substr(p + 1);
      pieces.push_back(
          PieceSpec{a, b, parse_expr_at(body, ln.number, static_cast<int>(p) + 2)});
    } else if (kw == "jump") {
      std::size_t p = skip_ws(ln.text, after);
      std::size_t q = p;
      while (q < ln.text.size() && std::isalpha(static_cast<unsigned char>(ln.text[q]))) ++q;
      if (ln.text.substr(p, q - p) != "at") {
        throw ParseError("expected 'at' after 'jump'", ln.number, static_cast<int>(p) + 1);
      }
      const std::string_view rest = rtrim(ln.text);
      const std::size_t side_sep = rest.find_last_of(" \t");
      if (side_sep == std::string_view::npos) {
        throw ParseError("expected 'side left' or 'side right'", ln.number,
                         static_cast<int>(rest.size()));
      }
      const std::string_view side_word = rest.substr(side_sep + 1);
      const std::string_view head = rtrim(rest.substr(0, side_sep));
      const std::size_t kw_sep = head.find_last_of(" \t");
      if (kw_sep == std::string_view::npos || head.substr(kw_sep + 1) != "side") {
        throw ParseError("expected 'side left' or 'side right'", ln.number,
                         static_cast<int>(rest.size()));
      }
      Side side;
      if (side_word == "left") {
        side = Side::left;
      } else if (side_word == "right") {
        side = Side::right;
      } else {
        throw ParseError("jump side must be 'left' or 'right'", ln.number,
                         static_cast<int>(side_sep) + 2);
      }
      const double c =
          parse_const(head.substr(q, kw_sep - q), ln.number, static_cast<int>(q) + 1);
      jumps.push_back(JumpPoint{c, side});
    } else {
      throw ParseError("unrecognized directive '" + std::string(kw) + "'", ln.number, 1);
    }
  }

  if (pieces.empty()) throw ValidationError("no pieces defined");
  if (!have_domain) {
    // Smooth potentials extend past [0,1] so index-shifted sampling stays in
    // range; jump potentials keep the bare unit interval.
    if (jumps.empty()) {
      dom_lo = -0.25;
      dom_hi = 1.25;
    } else {
      dom_lo = 0.0;
      dom_hi = 1.0;
    }
  }
  return PiecewiseFunction(dom_lo, dom_hi, std::move(pieces), std::move(jumps));
}

PiecewisePotential parse_potential(std::string_view source, double floor_margin) {
  return PiecewisePotential(parse_piecewise(source), floor_margin);
}

}  // namespace schrodet
