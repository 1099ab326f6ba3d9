#include "koenigs/expr.hpp"

#include <cmath>
#include <limits>

#include "koenigs/orbit.hpp"

namespace koenigs {

const char* error_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::Instability: return "instability";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Ambiguity: return "ambiguity";
    case ErrorKind::Inconclusive: return "inconclusive";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

ExprPtr make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

void require_valid(const MapExpr& m) {
  if (!m.valid()) throw Error(ErrorKind::Precondition, "empty expression");
}

void require_unimodular(Complex tau) {
  if (std::abs(std::abs(tau) - 1.0) > kUnimodularTol)
    throw Error(ErrorKind::Domain, "cayley tau must be unimodular");
}

}  // namespace

namespace {

MapExpr binary(NodeKind kind, const MapExpr& a, const MapExpr& b) {
  require_valid(a);
  require_valid(b);
  ExprNode n;
  n.kind = kind;
  n.a = a.ptr();
  n.b = b.ptr();
  return MapExpr(make_node(std::move(n)));
}

MapExpr unary(NodeKind kind, const MapExpr& a) {
  require_valid(a);
  ExprNode n;
  n.kind = kind;
  n.a = a.ptr();
  return MapExpr(make_node(std::move(n)));
}

}  // namespace

MapExpr expr_var() {
  ExprNode n;
  n.kind = NodeKind::Variable;
  return MapExpr(make_node(std::move(n)));
}

MapExpr expr_const(Complex c) {
  if (!finite(c)) throw Error(ErrorKind::Domain, "non-finite constant");
  ExprNode n;
  n.kind = NodeKind::Constant;
  n.value = c;
  return MapExpr(make_node(std::move(n)));
}

MapExpr expr_add(const MapExpr& a, const MapExpr& b) { return binary(NodeKind::Add, a, b); }
MapExpr expr_sub(const MapExpr& a, const MapExpr& b) { return binary(NodeKind::Sub, a, b); }
MapExpr expr_mul(const MapExpr& a, const MapExpr& b) { return binary(NodeKind::Mul, a, b); }
MapExpr expr_div(const MapExpr& a, const MapExpr& b) { return binary(NodeKind::Div, a, b); }

MapExpr expr_pow(const MapExpr& a, int k) {
  require_valid(a);
  if (k < 0 || k > 64) throw Error(ErrorKind::Domain, "power exponent must be in [0, 64]");
  ExprNode n;
  n.kind = NodeKind::Pow;
  n.exponent = k;
  n.a = a.ptr();
  return MapExpr(make_node(std::move(n)));
}

MapExpr expr_sqrt(const MapExpr& a) { return unary(NodeKind::Sqrt, a); }
MapExpr expr_neg(const MapExpr& a) { return unary(NodeKind::Neg, a); }

MapExpr expr_cayley(Complex tau, HalfPlane target) {
  require_unimodular(tau);
  ExprNode n;
  n.kind = NodeKind::Cayley;
  n.tau = tau;
  n.target = target;
  return MapExpr(make_node(std::move(n)));
}

MapExpr expr_cayley_inv(Complex tau, HalfPlane target) {
  require_unimodular(tau);
  ExprNode n;
  n.kind = NodeKind::CayleyInv;
  n.tau = tau;
  n.target = target;
  return MapExpr(make_node(std::move(n)));
}

MapExpr compose(const MapExpr& outer, const MapExpr& inner) {
  return binary(NodeKind::Compose, outer, inner);
}

namespace {

template <class R>
bool finite_c(const std::complex<R>& c) {
  return std::isfinite(c.real()) && std::isfinite(c.imag());
}

// On-cut test for the principal square root: strictly negative real axis.
template <class R>
void check_sqrt_cut(const std::complex<R>& w) {
  if (w.real() < R(0) && w.imag() == R(0))
    throw Error(ErrorKind::Domain, "square-root argument on the branch cut");
}

template <class R>
std::complex<R> int_pow(std::complex<R> base, int k) {
  std::complex<R> acc(R(1), R(0));
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

template <class R>
std::complex<R> eval_node(const ExprNode& n, const std::complex<R>& z) {
  using C = std::complex<R>;
  C out;
  switch (n.kind) {
    case NodeKind::Variable: out = z; break;
    case NodeKind::Constant: out = C(R(n.value.real()), R(n.value.imag())); break;
    case NodeKind::Add: out = eval_node(*n.a, z) + eval_node(*n.b, z); break;
    case NodeKind::Sub: out = eval_node(*n.a, z) - eval_node(*n.b, z); break;
    case NodeKind::Mul: out = eval_node(*n.a, z) * eval_node(*n.b, z); break;
    case NodeKind::Div: {
      C num = eval_node(*n.a, z);
      C den = eval_node(*n.b, z);
      if (den == C(R(0), R(0))) throw Error(ErrorKind::Domain, "division by zero");
      out = num / den;
      break;
    }
    case NodeKind::Pow: out = int_pow(eval_node(*n.a, z), n.exponent); break;
    case NodeKind::Sqrt: {
      C w = eval_node(*n.a, z);
      check_sqrt_cut(w);
      out = std::sqrt(w);
      break;
    }
    case NodeKind::Neg: out = -eval_node(*n.a, z); break;
    case NodeKind::Compose: out = eval_node(*n.a, eval_node(*n.b, z)); break;
    case NodeKind::Cayley: {
      C tau(R(n.tau.real()), R(n.tau.imag()));
      C den = tau - z;
      if (den == C(R(0), R(0))) throw Error(ErrorKind::Domain, "cayley pole");
      out = (tau + z) / den;
      if (n.target == HalfPlane::Upper) out *= C(R(0), R(1));
      break;
    }
    case NodeKind::CayleyInv: {
      C tau(R(n.tau.real()), R(n.tau.imag()));
      C w = z;
      if (n.target == HalfPlane::Upper) w /= C(R(0), R(1));
      C den = w + C(R(1), R(0));
      if (den == C(R(0), R(0))) throw Error(ErrorKind::Domain, "inverse cayley pole");
      out = tau * (w - C(R(1), R(0))) / den;
      break;
    }
  }
  if (!finite_c(out)) throw Error(ErrorKind::Overflow, "non-finite intermediate value");
  return out;
}

template <class R>
struct Dual {
  std::complex<R> v, d;
};

template <class R>
Dual<R> dual_node(const ExprNode& n, const Dual<R>& z) {
  using C = std::complex<R>;
  Dual<R> out;
  switch (n.kind) {
    case NodeKind::Variable: out = z; break;
    case NodeKind::Constant: out = {C(R(n.value.real()), R(n.value.imag())), C(R(0), R(0))}; break;
    case NodeKind::Add: {
      Dual<R> x = dual_node(*n.a, z), y = dual_node(*n.b, z);
      out = {x.v + y.v, x.d + y.d};
      break;
    }
    case NodeKind::Sub: {
      Dual<R> x = dual_node(*n.a, z), y = dual_node(*n.b, z);
      out = {x.v - y.v, x.d - y.d};
      break;
    }
    case NodeKind::Mul: {
      Dual<R> x = dual_node(*n.a, z), y = dual_node(*n.b, z);
      out = {x.v * y.v, x.v * y.d + x.d * y.v};
      break;
    }
    case NodeKind::Div: {
      Dual<R> x = dual_node(*n.a, z), y = dual_node(*n.b, z);
      if (y.v == C(R(0), R(0))) throw Error(ErrorKind::Domain, "division by zero");
      C q = x.v / y.v;
      out = {q, (x.d - q * y.d) / y.v};
      break;
    }
    case NodeKind::Pow: {
      Dual<R> x = dual_node(*n.a, z);
      if (n.exponent == 0) {
        out = {C(R(1), R(0)), C(R(0), R(0))};
      } else {
        C p = int_pow(x.v, n.exponent - 1);
        out = {p * x.v, R(n.exponent) * p * x.d};
      }
      break;
    }
    case NodeKind::Sqrt: {
      Dual<R> x = dual_node(*n.a, z);
      check_sqrt_cut(x.v);
      C s = std::sqrt(x.v);
      if (s == C(R(0), R(0))) throw Error(ErrorKind::Domain, "square root not differentiable at 0");
      out = {s, x.d / (R(2) * s)};
      break;
    }
    case NodeKind::Neg: {
      Dual<R> x = dual_node(*n.a, z);
      out = {-x.v, -x.d};
      break;
    }
    case NodeKind::Compose: out = dual_node(*n.a, dual_node(*n.b, z)); break;
    case NodeKind::Cayley: {
      C tau(R(n.tau.real()), R(n.tau.imag()));
      C den = tau - z.v;
      if (den == C(R(0), R(0))) throw Error(ErrorKind::Domain, "cayley pole");
      C v = (tau + z.v) / den;
      C d = R(2) * tau / (den * den) * z.d;
      if (n.target == HalfPlane::Upper) {
        v *= C(R(0), R(1));
        d *= C(R(0), R(1));
      }
      out = {v, d};
      break;
    }
    case NodeKind::CayleyInv: {
      C tau(R(n.tau.real()), R(n.tau.imag()));
      C w = z.v, dw = z.d;
      if (n.target == HalfPlane::Upper) {
        w /= C(R(0), R(1));
        dw /= C(R(0), R(1));
      }
      C den = w + C(R(1), R(0));
      if (den == C(R(0), R(0))) throw Error(ErrorKind::Domain, "inverse cayley pole");
      C v = tau * (w - C(R(1), R(0))) / den;
      C d = tau * R(2) / (den * den) * dw;
      out = {v, d};
      break;
    }
  }
  if (!finite_c(out.v) || !finite_c(out.d))
    throw Error(ErrorKind::Overflow, "non-finite intermediate value");
  return out;
}

}  // namespace

template <class R>
std::complex<R> eval_at(const MapExpr& map, std::complex<R> z) {
  if (!map.valid()) throw Error(ErrorKind::Precondition, "empty expression");
  return eval_node(map.node(), z);
}

template <class R>
ValueDeriv<R> eval_with_deriv(const MapExpr& map, std::complex<R> z) {
  if (!map.valid()) throw Error(ErrorKind::Precondition, "empty expression");
  Dual<R> seed{z, std::complex<R>(R(1), R(0))};
  Dual<R> r = dual_node(map.node(), seed);
  return {r.v, r.d};
}

template std::complex<double> eval_at<double>(const MapExpr&, std::complex<double>);
template std::complex<long double> eval_at<long double>(const MapExpr&, std::complex<long double>);
template ValueDeriv<double> eval_with_deriv<double>(const MapExpr&, std::complex<double>);
template ValueDeriv<long double> eval_with_deriv<long double>(const MapExpr&, std::complex<long double>);

Complex deriv(const MapExpr& map, Complex z) { return eval_with_deriv<double>(map, z).deriv; }

bool tree_has_variable(const MapExpr& map) {
  if (!map.valid()) return false;
  struct Walk {
    static bool go(const ExprNode& n) {
      if (n.kind == NodeKind::Variable) return true;
      if (n.a && go(*n.a)) return true;
      if (n.b && go(*n.b)) return true;
      return false;
    }
  };
  return Walk::go(map.node());
}

std::size_t tree_size(const MapExpr& map) {
  if (!map.valid()) return 0;
  struct Walk {
    static std::size_t go(const ExprNode& n) {
      std::size_t s = 1;
      if (n.a) s += go(*n.a);
      if (n.b) s += go(*n.b);
      return s;
    }
  };
  return Walk::go(map.node());
}

double Orbit::log_mag_of_iterate_deriv(std::size_t n) const {
  double s = 0;
  for (std::size_t k = 0; k < n && k < step_log_mag.size(); ++k) s += step_log_mag[k];
  return s;
}

double Orbit::arg_of_iterate_deriv(std::size_t n) const {
  double s = 0;
  for (std::size_t k = 0; k < n && k < step_arg.size(); ++k) s += step_arg[k];
  return s;
}

Orbit iterate_map(const MapExpr& map, Complex z0, int n_max) {
  if (std::abs(z0) >= 1.0)
    throw Error(ErrorKind::Precondition, "orbit seed must lie in the open disc");
  if (n_max < 0) throw Error(ErrorKind::Precondition, "n_max must be non-negative");

  Orbit orbit;
  orbit.seed = z0;
  orbit.points.reserve(static_cast<std::size_t>(n_max) + 1);
  orbit.points.push_back(z0);
  orbit.step_log_mag.reserve(n_max);
  orbit.step_arg.reserve(n_max);

  int stagnant = 0;
  Complex z = z0;
  for (int k = 0; k < n_max; ++k) {
    ValueDeriv<double> vd = eval_with_deriv<double>(map, z);
    Complex next = vd.value;
    double mag = std::abs(next);
    if (mag > 1.0 + kDiscEscapeTol)
      throw Error(ErrorKind::Instability, "orbit left the closed disc");
    if (mag >= 1.0) {
      orbit.stop = StopReason::LeftDisc;
      return orbit;
    }
    double dmag = std::abs(vd.deriv);
    if (dmag == 0.0) {
      orbit.zero_derivative = true;
      orbit.step_log_mag.push_back(-std::numeric_limits<double>::infinity());
      orbit.step_arg.push_back(0.0);
    } else {
      orbit.step_log_mag.push_back(std::log(dmag));
      orbit.step_arg.push_back(std::arg(vd.deriv));
    }
    stagnant = (std::abs(next - z) < kStagnationTol) ? stagnant + 1 : 0;
    orbit.points.push_back(next);
    z = next;
    if (stagnant >= kStagnationRuns) {
      orbit.stop = StopReason::Stagnated;
      return orbit;
    }
  }
  orbit.stop = StopReason::ReachedLimit;
  return orbit;
}

}  // namespace koenigs
