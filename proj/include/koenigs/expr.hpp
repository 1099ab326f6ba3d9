#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "koenigs/errors.hpp"

namespace koenigs {

using Complex = std::complex<double>;

constexpr double kUnimodularTol = 1e-12;

enum class NodeKind {
  Variable,   // z
  Constant,   // finite complex constant
  Add,
  Sub,
  Mul,
  Div,
  Pow,        // integer power, exponent >= 0
  Sqrt,       // principal branch, cut along (-inf, 0), arg in (-pi, pi]
  Neg,
  Compose,    // a after b:  a(b(z))
  Cayley,     // disc -> half-plane, pole at tau
  CayleyInv   // half-plane -> disc
};

enum class HalfPlane { Upper, Right };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  NodeKind kind{};
  Complex value{};      // Constant
  int exponent{};       // Pow
  Complex tau{};        // Cayley / CayleyInv
  HalfPlane target{};   // Cayley / CayleyInv
  ExprPtr a, b;
};

/// Immutable expression tree defining a holomorphic map of one complex
/// variable.  Values are shared; all operations on MapExpr are pure and
/// safe to use concurrently.
class MapExpr {
 public:
  MapExpr() = default;
  explicit MapExpr(ExprPtr node) : node_(std::move(node)) {}

  bool valid() const { return node_ != nullptr; }
  const ExprNode& node() const { return *node_; }
  ExprPtr ptr() const { return node_; }

 private:
  ExprPtr node_;
};

// Builders.  Constants must be finite; cayley taus must be unimodular
// within kUnimodularTol.
MapExpr expr_var();
MapExpr expr_const(Complex c);
MapExpr expr_add(const MapExpr& a, const MapExpr& b);
MapExpr expr_sub(const MapExpr& a, const MapExpr& b);
MapExpr expr_mul(const MapExpr& a, const MapExpr& b);
MapExpr expr_div(const MapExpr& a, const MapExpr& b);
MapExpr expr_pow(const MapExpr& a, int k);
MapExpr expr_sqrt(const MapExpr& a);
MapExpr expr_neg(const MapExpr& a);
MapExpr expr_cayley(Complex tau, HalfPlane target);
MapExpr expr_cayley_inv(Complex tau, HalfPlane target);

/// Tree whose evaluation equals outer(inner(z)).  No simplification.
MapExpr compose(const MapExpr& outer, const MapExpr& inner);

inline MapExpr operator+(const MapExpr& a, const MapExpr& b) { return expr_add(a, b); }
inline MapExpr operator-(const MapExpr& a, const MapExpr& b) { return expr_sub(a, b); }
inline MapExpr operator*(const MapExpr& a, const MapExpr& b) { return expr_mul(a, b); }
inline MapExpr operator/(const MapExpr& a, const MapExpr& b) { return expr_div(a, b); }
inline MapExpr operator+(const MapExpr& a, Complex c) { return expr_add(a, expr_const(c)); }
inline MapExpr operator-(const MapExpr& a) { return expr_neg(a); }

/// Exact tree evaluation.  Throws Error(Domain) on division by zero or a
/// square-root argument on the branch cut, Error(Overflow) if a non-finite
/// value appears.
template <class R>
std::complex<R> eval_at(const MapExpr& map, std::complex<R> z);

inline Complex eval(const MapExpr& map, Complex z) { return eval_at<double>(map, z); }

template <class R>
struct ValueDeriv {
  std::complex<R> value;
  std::complex<R> deriv;
};

/// Structural forward-mode differentiation over the complex field; never a
/// finite difference.
template <class R>
ValueDeriv<R> eval_with_deriv(const MapExpr& map, std::complex<R> z);

Complex deriv(const MapExpr& map, Complex z);

bool tree_has_variable(const MapExpr& map);
std::size_t tree_size(const MapExpr& map);

}  // namespace koenigs
