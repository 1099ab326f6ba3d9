#pragma once

#include <random>

#include "koenigs/expr.hpp"
#include "koenigs/parser.hpp"

namespace koenigs::testing {

inline MapExpr parsed(const std::string& src) {
  ParseResult r = parse_map(src);
  REQUIRE_MESSAGE(r.ok(), src << " : " << (r.ok() ? "" : r.error->message));
  return r.expr;
}

// h(z) = ((1+z)/(1-z))^2, a conformal map of the disc onto the plane slit
// along (-inf, 0], h(0) = 1.
inline MapExpr slit_h() { return parsed("((1+z)/(1-z))^2"); }

// h^{-1}(w) = (sqrt(w)-1)/(sqrt(w)+1) with the principal square root.
inline MapExpr slit_h_inverse() { return parsed("(sqrt(z)-1)/(sqrt(z)+1)"); }

// The translation family member h^{-1} o (h + c) over the slit map.
inline MapExpr slit_translate(Complex c) {
  return compose(slit_h_inverse(), expr_add(slit_h(), expr_const(c)));
}

// Translations conjugated through the half-plane Cayley maps (tau = 1).
inline MapExpr cayley_translate(Complex c, HalfPlane target) {
  MapExpr h = expr_cayley(Complex(1, 0), target);
  MapExpr h_inv = expr_cayley_inv(Complex(1, 0), target);
  return compose(h_inv, expr_add(h, expr_const(c)));
}

// Closed-form slit evaluation for oracle use, independent of MapExpr.
inline Complex slit_oracle(Complex z) {
  Complex q = (1.0 + z) / (1.0 - z);
  return q * q;
}

inline Complex slit_oracle_inverse(Complex w) {
  Complex s = std::sqrt(w);
  return (s - 1.0) / (s + 1.0);
}

struct TreeGen {
  std::mt19937_64 rng;
  explicit TreeGen(unsigned seed) : rng(seed) {}

  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

  Complex small_const() {
    return Complex(1.6 * unit() - 0.8, 1.6 * unit() - 0.8);
  }

  // Random tree built from safe components: denominators are offset away
  // from zero and square roots shifted into the right half-plane, so most
  // samples evaluate without domain errors on |z| < 0.9.
  MapExpr gen(int depth) {
    int pick = static_cast<int>(unit() * (depth <= 0 ? 2 : 8));
    switch (pick) {
      case 0: return expr_var();
      case 1: return expr_const(small_const());
      case 2: return expr_add(gen(depth - 1), gen(depth - 1));
      case 3: return expr_sub(gen(depth - 1), gen(depth - 1));
      case 4: return expr_mul(gen(depth - 1), gen(depth - 1));
      case 5:
        return expr_div(gen(depth - 1),
                        expr_add(expr_const(Complex(2.5, 0.4)), gen(depth - 1)));
      case 6: return expr_pow(gen(depth - 1), 1 + static_cast<int>(unit() * 3));
      default:
        return expr_sqrt(expr_add(expr_const(Complex(3.0, 0.0)), gen(depth - 1)));
    }
  }

  Complex disc_point(double radius = 0.9) {
    double r = radius * std::sqrt(unit());
    double t = 2.0 * M_PI * unit();
    return std::polar(r, t);
  }
};

}  // namespace koenigs::testing
