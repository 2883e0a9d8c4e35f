#include "schrodet/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <utility>

#include "schrodet/errors.hpp"

namespace schrodet {

struct Expr::Node {
  Kind kind;
  double value = 0.0;  // literal for number, exponent for pow
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

struct ExprAccess {
  static const std::shared_ptr<const Expr::Node>& node(const Expr& e) { return e.node_; }
  static Expr wrap(std::shared_ptr<const Expr::Node> n) { return Expr(std::move(n)); }
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

double eval_node(const Node& n, double x) {
  using K = Expr::Kind;
  switch (n.kind) {
    case K::number:
      return n.value;
    case K::variable:
      return x;
    case K::pi:
      return std::numbers::pi;
    case K::add:
      return eval_node(*n.a, x) + eval_node(*n.b, x);
    case K::sub:
      return eval_node(*n.a, x) - eval_node(*n.b, x);
    case K::mul:
      return eval_node(*n.a, x) * eval_node(*n.b, x);
    case K::div:
      return eval_node(*n.a, x) / eval_node(*n.b, x);
    case K::pow:
      return std::pow(eval_node(*n.a, x), n.value);
    case K::neg:
      return -eval_node(*n.a, x);
    case K::sin:
      return std::sin(eval_node(*n.a, x));
    case K::cos:
      return std::cos(eval_node(*n.a, x));
    case K::sqrt:
      return std::sqrt(eval_node(*n.a, x));
    case K::exp:
      return std::exp(eval_node(*n.a, x));
    case K::log:
      return std::log(eval_node(*n.a, x));
  }
  return 0.0;  // unreachable
}

std::string format_literal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Precedence for printing: additive 1, multiplicative 2, unary minus 3,
// power 4, atoms and function calls 5.
int precedence(Expr::Kind k) {
  using K = Expr::Kind;
  switch (k) {
    case K::add:
    case K::sub:
      return 1;
    case K::mul:
    case K::div:
      return 2;
    case K::neg:
      return 3;
    case K::pow:
      return 4;
    default:
      return 5;
  }
}

Expr derivative_node(const Node& n) {
  using K = Expr::Kind;
  const auto wrap = [](const NodePtr& p) { return ExprAccess::wrap(p); };
  switch (n.kind) {
    case K::number:
    case K::pi:
      return Expr::number(0);
    case K::variable:
      return Expr::number(1);
    case K::add:
      return Expr::add(derivative_node(*n.a), derivative_node(*n.b));
    case K::sub:
      return Expr::sub(derivative_node(*n.a), derivative_node(*n.b));
    case K::mul:
      return Expr::add(Expr::mul(derivative_node(*n.a), wrap(n.b)),
                       Expr::mul(wrap(n.a), derivative_node(*n.b)));
    case K::div:
      return Expr::div(Expr::sub(Expr::mul(derivative_node(*n.a), wrap(n.b)),
                                 Expr::mul(wrap(n.a), derivative_node(*n.b))),
                       Expr::pow(wrap(n.b), 2));
    case K::pow: {
      if (n.value == 0) return Expr::number(0);
      // c * u^(c-1) * u'
      return Expr::mul(
          Expr::mul(Expr::number(n.value), Expr::pow(wrap(n.a), n.value - 1)),
          derivative_node(*n.a));
    }
    case K::neg:
      return Expr::neg(derivative_node(*n.a));
    case K::sin:
      return Expr::mul(Expr::cos(wrap(n.a)), derivative_node(*n.a));
    case K::cos:
      return Expr::neg(Expr::mul(Expr::sin(wrap(n.a)), derivative_node(*n.a)));
    case K::sqrt:
      return Expr::div(derivative_node(*n.a),
                       Expr::mul(Expr::number(2), Expr::sqrt(wrap(n.a))));
    case K::exp:
      return Expr::mul(Expr::exp(wrap(n.a)), derivative_node(*n.a));
    case K::log:
      return Expr::div(derivative_node(*n.a), wrap(n.a));
  }
  return Expr::number(0);  // unreachable
}

void print_node(const Node& n, std::string& out);

void print_child(const Node& child, int parent_prec, bool tight, std::string& out) {
  // tight: parenthesize on equal precedence too (right operands, so that
  // reparsing under left associativity reproduces the tree).
  const int p = precedence(child.kind);
  const bool parens = tight ? p <= parent_prec : p < parent_prec;
  if (parens) out += '(';
  print_node(child, out);
  if (parens) out += ')';
}

void print_node(const Node& n, std::string& out) {
  using K = Expr::Kind;
  switch (n.kind) {
    case K::number:
      out += format_literal(n.value);
      return;
    case K::variable:
      out += 'x';
      return;
    case K::pi:
      out += "pi";
      return;
    case K::add:
      print_child(*n.a, 1, false, out);
      out += " + ";
      print_child(*n.b, 1, true, out);
      return;
    case K::sub:
      print_child(*n.a, 1, false, out);
      out += " - ";
      print_child(*n.b, 1, true, out);
      return;
    case K::mul:
      print_child(*n.a, 2, false, out);
      out += " * ";
      print_child(*n.b, 2, true, out);
      return;
    case K::div:
      print_child(*n.a, 2, false, out);
      out += " / ";
      print_child(*n.b, 2, true, out);
      return;
    case K::pow:
      print_child(*n.a, 4, true, out);
      out += '^';
      if (n.value < 0) {
        out += "(-";
        out += format_literal(-n.value);
        out += ')';
      } else {
        out += format_literal(n.value);
      }
      return;
    case K::neg:
      out += '-';
      print_child(*n.a, 3, false, out);
      return;
    case K::sin:
    case K::cos:
    case K::sqrt:
    case K::exp:
    case K::log: {
      out += n.kind == K::sin    ? "sin"
             : n.kind == K::cos  ? "cos"
             : n.kind == K::sqrt ? "sqrt"
             : n.kind == K::exp  ? "exp"
                                 : "log";
      out += '(';
      print_node(*n.a, out);
      out += ')';
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;
  int line;
  int col_base;

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, line, col_base + static_cast<int>(at));
  }

  void skip_ws() {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) {
      ++pos;
    }
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'", pos);
  }

  bool next_is_digit() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  double read_number() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    if (pos == start || (pos == start + 1 && text[start] == '.')) {
      fail("expected a number", start);
    }
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      std::size_t e = pos + 1;
      if (e < text.size() && (text[e] == '+' || text[e] == '-')) ++e;
      if (e < text.size() && std::isdigit(static_cast<unsigned char>(text[e]))) {
        pos = e;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      }
    }
    return std::strtod(std::string(text.substr(start, pos - start)).c_str(), nullptr);
  }

  std::string read_ident() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    return std::string(text.substr(start, pos - start));
  }
};

struct Parser {
  Lexer lex;

  Expr parse_full() {
    Expr e = parse_sum();
    if (!lex.eof()) lex.fail("unexpected trailing input", lex.pos);
    return e;
  }

  Expr parse_sum() {
    Expr e = parse_term();
    for (;;) {
      if (lex.consume('+')) {
        e = Expr::add(e, parse_term());
      } else if (lex.consume('-')) {
        e = Expr::sub(e, parse_term());
      } else {
        return e;
      }
    }
  }

  Expr parse_term() {
    Expr e = parse_unary();
    for (;;) {
      if (lex.consume('*')) {
        e = Expr::mul(e, parse_unary());
      } else if (lex.consume('/')) {
        e = Expr::div(e, parse_unary());
      } else {
        return e;
      }
    }
  }

  // Unary minus binds looser than '^', so -x^2 reads as -(x^2).
  Expr parse_unary() {
    if (lex.consume('-')) return Expr::neg(parse_unary());
    return parse_power();
  }

  // power := primary ['^' literal-exponent]
  Expr parse_power() {
    Expr base = parse_primary();
    if (lex.consume('^')) return Expr::pow(base, parse_exponent());
    return base;
  }

  // Exponents must be numeric literals (optionally negated, optionally in
  // parentheses): x^2, x^-0.5, x^(-3).
  double parse_exponent() {
    if (lex.consume('(')) {
      const bool negative = lex.consume('-');
      if (!lex.next_is_digit()) lex.fail("exponent must be a numeric literal", lex.pos);
      const double v = lex.read_number();
      lex.expect(')');
      return negative ? -v : v;
    }
    const bool negative = lex.consume('-');
    if (!lex.next_is_digit()) lex.fail("exponent must be a numeric literal", lex.pos);
    const double v = lex.read_number();
    return negative ? -v : v;
  }

  Expr parse_primary() {
    if (lex.next_is_digit()) return Expr::number(lex.read_number());
    if (lex.consume('(')) {
      Expr e = parse_sum();
      lex.expect(')');
      return e;
    }
    const std::size_t at = lex.pos;
    const std::string id = lex.read_ident();
    if (id == "x") return Expr::variable();
    if (id == "pi") return Expr::pi();
    if (id == "sin" || id == "cos" || id == "sqrt" || id == "exp" || id == "log") {
      lex.expect('(');
      Expr arg = parse_sum();
      lex.expect(')');
      if (id == "sin") return Expr::sin(arg);
      if (id == "cos") return Expr::cos(arg);
      if (id == "sqrt") return Expr::sqrt(arg);
      if (id == "exp") return Expr::exp(arg);
      return Expr::log(arg);
    }
    if (id.empty()) lex.fail("unexpected character", at);
    lex.fail("unknown identifier '" + id + "'", at);
  }
};

bool has_variable(const Node& n) {
  if (n.kind == Expr::Kind::variable) return true;
  if (n.a && has_variable(*n.a)) return true;
  if (n.b && has_variable(*n.b)) return true;
  return false;
}

bool equal_nodes(const Node& l, const Node& r) {
  if (l.kind != r.kind) return false;
  if (l.kind == Expr::Kind::number || l.kind == Expr::Kind::pow) {
    if (!(l.value == r.value)) return false;
  }
  if ((l.a != nullptr) != (r.a != nullptr)) return false;
  if ((l.b != nullptr) != (r.b != nullptr)) return false;
  if (l.a && !equal_nodes(*l.a, *r.a)) return false;
  if (l.b && !equal_nodes(*l.b, *r.b)) return false;
  return true;
}

}  // namespace

Expr::Kind Expr::kind() const { return node_->kind; }

double Expr::value() const {
  if (node_->kind != Kind::number) throw ValidationError("value() on non-literal node");
  return node_->value;
}

double Expr::exponent() const {
  if (node_->kind != Kind::pow) throw ValidationError("exponent() on non-pow node");
  return node_->value;
}

int Expr::child_count() const {
  if (!node_) return 0;
  return (node_->a ? 1 : 0) + (node_->b ? 1 : 0);
}

Expr Expr::child(int i) const { return ExprAccess::wrap(i == 0 ? node_->a : node_->b); }

double Expr::eval(double x) const { return eval_node(*node_, x); }

Expr Expr::derivative() const { return derivative_node(*node_); }

std::string Expr::str() const {
  std::string out;
  print_node(*node_, out);
  return out;
}

bool Expr::structurally_equal(const Expr& other) const {
  return equal_nodes(*node_, *other.node_);
}

Expr Expr::number(double v) {
  if (v < 0) return neg(number(-v));
  if (v == 0) v = 0.0;  // normalize -0
  auto n = std::make_shared<Node>();
  n->kind = Kind::number;
  n->value = v;
  return Expr(std::move(n));
}

namespace {
NodePtr make_node(Expr::Kind k, double v, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->value = v;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
}  // namespace

Expr Expr::variable() { return ExprAccess::wrap(make_node(Kind::variable, 0, nullptr, nullptr)); }
Expr Expr::pi() { return ExprAccess::wrap(make_node(Kind::pi, 0, nullptr, nullptr)); }
Expr Expr::add(Expr l, Expr r) {
  return ExprAccess::wrap(make_node(Kind::add, 0, ExprAccess::node(l), ExprAccess::node(r)));
}
Expr Expr::sub(Expr l, Expr r) {
  return ExprAccess::wrap(make_node(Kind::sub, 0, ExprAccess::node(l), ExprAccess::node(r)));
}
Expr Expr::mul(Expr l, Expr r) {
  return ExprAccess::wrap(make_node(Kind::mul, 0, ExprAccess::node(l), ExprAccess::node(r)));
}
Expr Expr::div(Expr l, Expr r) {
  return ExprAccess::wrap(make_node(Kind::div, 0, ExprAccess::node(l), ExprAccess::node(r)));
}
Expr Expr::pow(Expr base, double e) {
  return ExprAccess::wrap(make_node(Kind::pow, e, ExprAccess::node(base), nullptr));
}
Expr Expr::neg(Expr v) {
  return ExprAccess::wrap(make_node(Kind::neg, 0, ExprAccess::node(v), nullptr));
}
Expr Expr::sin(Expr v) {
  return ExprAccess::wrap(make_node(Kind::sin, 0, ExprAccess::node(v), nullptr));
}
Expr Expr::cos(Expr v) {
  return ExprAccess::wrap(make_node(Kind::cos, 0, ExprAccess::node(v), nullptr));
}
Expr Expr::sqrt(Expr v) {
  return ExprAccess::wrap(make_node(Kind::sqrt, 0, ExprAccess::node(v), nullptr));
}
Expr Expr::exp(Expr v) {
  return ExprAccess::wrap(make_node(Kind::exp, 0, ExprAccess::node(v), nullptr));
}
Expr Expr::log(Expr v) {
  return ExprAccess::wrap(make_node(Kind::log, 0, ExprAccess::node(v), nullptr));
}

Expr parse_expr_at(std::string_view text, int line, int column_base) {
  Parser p{Lexer{text, 0, line, column_base}};
  return p.parse_full();
}

Expr parse_expr(std::string_view text) { return parse_expr_at(text, 1, 1); }

bool is_constant(const Expr& e) { return !has_variable(*ExprAccess::node(e)); }

}  // namespace schrodet
