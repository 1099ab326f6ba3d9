#include "koenigs/parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace koenigs {

namespace {

struct ParseError {
  std::size_t offset;
  std::string message;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  MapExpr run() {
    skip_ws();
    MapExpr e = expression();
    skip_ws();
    if (pos_ != src_.size()) fail(pos_, "unexpected trailing input");
    return e;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(std::size_t at, const std::string& msg) {
    throw ParseError{at, msg};
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!consume(c)) fail(pos_, std::string("expected '") + c + "' (" + what + ")");
  }

  // expr := term (('+'|'-') term)*
  MapExpr expression() {
    MapExpr e = term();
    for (;;) {
      skip_ws();
      if (consume('+')) {
        skip_ws();
        e = expr_add(e, term());
      } else if (consume('-')) {
        skip_ws();
        e = expr_sub(e, term());
      } else {
        return e;
      }
    }
  }

  // term := unary (('*'|'/') unary)*
  MapExpr term() {
    MapExpr e = unary();
    for (;;) {
      skip_ws();
      if (consume('*')) {
        skip_ws();
        e = expr_mul(e, unary());
      } else if (consume('/')) {
        skip_ws();
        e = expr_div(e, unary());
      } else {
        return e;
      }
    }
  }

  // unary := '-' unary | power
  MapExpr unary() {
    skip_ws();
    if (consume('-')) {
      skip_ws();
      return expr_neg(unary());
    }
    return power();
  }

  // power := primary ('^' integer)*
  MapExpr power() {
    MapExpr e = primary();
    for (;;) {
      skip_ws();
      if (!consume('^')) return e;
      skip_ws();
      std::size_t at = pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
        fail(pos_, "expected integer exponent after '^'");
      long k = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        k = k * 10 + (src_[pos_] - '0');
        if (k > 64) fail(at, "exponent too large (max 64)");
        ++pos_;
      }
      e = expr_pow(e, static_cast<int>(k));
    }
  }

  MapExpr primary() {
    skip_ws();
    if (at_end()) fail(pos_, "unexpected end of input");
    char c = peek();
    if (c == '(') {
      ++pos_;
      MapExpr e = expression();
      skip_ws();
      expect(')', "closing parenthesis");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(pos_, "unexpected character");
  }

  // number := digits ['.' digits] [('e'|'E') ['+'|'-'] digits] ['i']
  MapExpr number() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (consume('.')) {
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
        fail(pos_, "malformed literal: digits required after '.'");
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    if (pos_ == start) fail(start, "malformed literal");
    if (peek() == 'e' || peek() == 'E') {
      std::size_t mark = pos_;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
        pos_ = mark;  // not an exponent; 'e' belongs to following text
      } else {
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
    }
    std::string text(src_.substr(start, pos_ - start));
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end == nullptr || *end != '\0' || !std::isfinite(v))
      fail(start, "malformed literal");
    if (consume('i')) return expr_const(Complex(0.0, v));
    return expr_const(Complex(v, 0.0));
  }

  bool keyword(std::string_view word) {
    if (src_.substr(pos_, word.size()) != word) return false;
    std::size_t after = pos_ + word.size();
    if (after < src_.size() && std::isalnum(static_cast<unsigned char>(src_[after])))
      return false;
    pos_ = after;
    return true;
  }

  MapExpr identifier() {
    std::size_t at = pos_;
    if (keyword("z")) return expr_var();
    if (keyword("sqrt")) {
      skip_ws();
      expect('(', "sqrt argument");
      MapExpr e = expression();
      skip_ws();
      expect(')', "closing parenthesis");
      return expr_sqrt(e);
    }
    if (keyword("neg")) {
      skip_ws();
      expect('(', "neg argument");
      MapExpr e = expression();
      skip_ws();
      expect(')', "closing parenthesis");
      return expr_neg(e);
    }
    if (keyword("compose")) {
      skip_ws();
      expect('(', "compose arguments");
      MapExpr outer = expression();
      skip_ws();
      expect(',', "second compose argument");
      MapExpr inner = expression();
      skip_ws();
      expect(')', "closing parenthesis");
      return compose(outer, inner);
    }
    if (keyword("cayley")) return cayley_form(false);
    if (keyword("icayley")) return cayley_form(true);
    while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
    fail(at, "unknown identifier '" + std::string(src_.substr(at, pos_ - at)) + "'");
  }

  MapExpr cayley_form(bool inverse) {
    skip_ws();
    expect('(', "cayley arguments");
    skip_ws();
    std::size_t at = pos_;
    if (!keyword("tau")) fail(at, "expected 'tau='");
    skip_ws();
    expect('=', "tau value");
    MapExpr tau_expr = expression();
    if (tree_has_variable(tau_expr)) fail(at, "tau must be a constant");
    Complex tau;
    try {
      tau = eval(tau_expr, Complex(0, 0));
    } catch (const Error&) {
      fail(at, "tau must be a finite constant");
    }
    skip_ws();
    expect(',', "'to=' argument");
    skip_ws();
    at = pos_;
    if (!keyword("to")) fail(at, "expected 'to='");
    skip_ws();
    expect('=', "target half-plane");
    skip_ws();
    at = pos_;
    HalfPlane target;
    if (keyword("RH")) {
      target = HalfPlane::Right;
    } else if (keyword("H")) {
      target = HalfPlane::Upper;
    } else {
      fail(at, "expected target 'H' or 'RH'");
    }
    skip_ws();
    expect(')', "closing parenthesis");
    try {
      return inverse ? expr_cayley_inv(tau, target) : expr_cayley(tau, target);
    } catch (const Error& e) {
      fail(at, e.what());
    }
  }
};

int precedence_of(NodeKind k) {
  switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;  // atoms and call forms never need parens
  }
}

void format_node(const ExprNode& n, std::string& out);

void format_child(const ExprNode& child, int parent_prec, std::string& out) {
  std::string piece;
  format_node(child, piece);
  bool parens = precedence_of(child.kind) < parent_prec;
  if (child.kind == NodeKind::Constant &&
      (piece.find(' ') != std::string::npos || piece.front() == '-'))
    parens = true;
  if (parens) out += '(';
  out += piece;
  if (parens) out += ')';
}

void format_node(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Variable: out += 'z'; break;
    case NodeKind::Constant: out += format_complex_literal(n.value); break;
    case NodeKind::Add:
      format_child(*n.a, 1, out);
      out += " + ";
      format_child(*n.b, 2, out);
      break;
    case NodeKind::Sub:
      format_child(*n.a, 1, out);
      out += " - ";
      format_child(*n.b, 2, out);
      break;
    case NodeKind::Mul:
      format_child(*n.a, 2, out);
      out += "*";
      format_child(*n.b, 3, out);
      break;
    case NodeKind::Div:
      format_child(*n.a, 2, out);
      out += "/";
      format_child(*n.b, 3, out);
      break;
    case NodeKind::Neg:
      out += '-';
      format_child(*n.a, 4, out);
      break;
    case NodeKind::Pow:
      format_child(*n.a, 5, out);
      out += '^';
      out += std::to_string(n.exponent);
      break;
    case NodeKind::Sqrt:
      out += "sqrt(";
      format_node(*n.a, out);
      out += ')';
      break;
    case NodeKind::Compose:
      out += "compose(";
      format_node(*n.a, out);
      out += ", ";
      format_node(*n.b, out);
      out += ')';
      break;
    case NodeKind::Cayley:
    case NodeKind::CayleyInv:
      out += (n.kind == NodeKind::Cayley) ? "cayley(tau=" : "icayley(tau=";
      out += format_complex_literal(n.tau);
      out += ", to=";
      out += (n.target == HalfPlane::Right) ? "RH" : "H";
      out += ')';
      break;
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string format_complex_literal(Complex c) {
  if (c.imag() == 0.0) return format_double(c.real());
  if (c.real() == 0.0) return format_double(c.imag()) + "i";
  std::string s = format_double(c.real());
  if (c.imag() > 0 || std::isnan(c.imag())) s += " + " + format_double(c.imag()) + "i";
  else s += " - " + format_double(-c.imag()) + "i";
  return s;
}

ParseResult parse_map(std::string_view src) {
  try {
    Parser p(src);
    return {p.run(), std::nullopt};
  } catch (const ParseError& e) {
    return {MapExpr(), Diagnostic{e.offset, e.message}};
  } catch (const Error& e) {
    return {MapExpr(), Diagnostic{0, e.what()}};
  }
}

std::string format_map(const MapExpr& map) {
  if (!map.valid()) return "";
  std::string out;
  format_node(map.node(), out);
  return out;
}

}  // namespace koenigs
