#pragma once

#include <utility>

#include "koenigs/expr.hpp"

namespace koenigs {

/// Pseudohyperbolic distance in [0,1) together with its hyperbolic
/// counterpart artanh(pseudo).
struct DistanceValue {
  double pseudo = 0;
  double hyperbolic = 0;
};

/// artanh computed as 0.5*log((1+p)/(1-p)) with the argument clamped to
/// 1 - 1e-15 to control boundary blow-up.
double artanh_guarded(double p);

/// rho*(z,w) = |z-w| / |1 - conj(w) z| for z, w in the open disc.
DistanceValue dist_disc(Complex z, Complex w);

/// Right half-plane: |u-v| / |v + conj(u)|;  upper: |u-v| / |u - conj(v)|.
DistanceValue dist_halfplane(Complex u, Complex v, HalfPlane which);

/// (C, C^{-1}) with C mapping the disc onto the target half-plane and pole
/// at tau.
std::pair<MapExpr, MapExpr> cayley_pair(Complex tau, HalfPlane target);

/// Membership in { z : rho*(z, f(z)) < r }, reported with a signed margin
/// r - rho* rather than a bare boolean; |margin| < 1e-12 is indeterminate.
struct VMembership {
  double rho = 0;       // rho*(z, f(z))
  double margin = 0;    // r - rho
  bool member = false;
  bool indeterminate = false;
};

VMembership v_membership(const MapExpr& map, double r, Complex z);

/// Same set in half-plane coordinates, for maps of a half-plane.
VMembership v_membership_halfplane(const MapExpr& map, double r, Complex u, HalfPlane which);

}  // namespace koenigs
