#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace schrodet {

/// Immutable expression tree over one variable `x`.
///
/// Grammar: decimal literals, `x`, `pi`, `+ - * / ^`, unary minus,
/// `sin cos sqrt exp log`, parentheses. Exponents of `^` are restricted to
/// numeric literals so that differentiation stays total.
class Expr {
 public:
  enum class Kind {
    number,
    variable,
    pi,
    add,
    sub,
    mul,
    div,
    pow,  // base is an Expr, exponent a numeric literal
    neg,
    sin,
    cos,
    sqrt,
    exp,
    log,
  };

  Expr() = default;

  Kind kind() const;
  /// Literal value of a `number` node.
  double value() const;
  /// Literal exponent of a `pow` node.
  double exponent() const;
  int child_count() const;
  Expr child(int i) const;

  double eval(double x) const;
  double operator()(double x) const { return eval(x); }

  /// Symbolic derivative with respect to x. No simplification beyond what is
  /// needed to keep the result evaluable everywhere the input is.
  Expr derivative() const;

  /// Prints a source string that parses back to a structurally equal tree.
  std::string str() const;

  bool structurally_equal(const Expr& other) const;

  // Factories. `number` normalizes negative literals to neg(number(|v|)) so
  // printed trees stay inside the grammar.
  static Expr number(double v);
  static Expr variable();
  static Expr pi();
  static Expr add(Expr lhs, Expr rhs);
  static Expr sub(Expr lhs, Expr rhs);
  static Expr mul(Expr lhs, Expr rhs);
  static Expr div(Expr lhs, Expr rhs);
  static Expr pow(Expr base, double exponent);
  static Expr neg(Expr operand);
  static Expr sin(Expr operand);
  static Expr cos(Expr operand);
  static Expr sqrt(Expr operand);
  static Expr exp(Expr operand);
  static Expr log(Expr operand);

  bool valid() const noexcept { return node_ != nullptr; }

  struct Node;  // defined in expr.cpp; trees are opaque outside it

 private:
  friend struct ExprAccess;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Parses a complete expression string. Throws ParseError on bad syntax.
Expr parse_expr(std::string_view text);

/// Same, reporting positions relative to (line, column_base) of a larger
/// source. Used by the piecewise-function parser.
Expr parse_expr_at(std::string_view text, int line, int column_base);

/// True when the expression has no `x` nodes.
bool is_constant(const Expr& e);

}  // namespace schrodet
