#include "koenigs/metric.hpp"

#include <cmath>

namespace koenigs {

namespace {

using LComplex = std::complex<long double>;

LComplex widen(Complex z) { return LComplex(z.real(), z.imag()); }

constexpr double kVMembershipBand = 1e-12;

}  // namespace

double artanh_guarded(double p) {
  if (p < 0) throw Error(ErrorKind::Domain, "pseudohyperbolic distance must be non-negative");
  const double cap = 1.0 - 1e-15;
  if (p > cap) p = cap;
  return 0.5 * std::log((1.0 + p) / (1.0 - p));
}

DistanceValue dist_disc(Complex z, Complex w) {
  if (std::abs(z) >= 1.0 || std::abs(w) >= 1.0)
    throw Error(ErrorKind::Domain, "dist_disc arguments must lie in the open disc");
  // Extended precision: near the boundary 1 - conj(w) z cancels badly.
  LComplex zl = widen(z), wl = widen(w);
  long double num = std::abs(zl - wl);
  long double den = std::abs(LComplex(1.0L, 0.0L) - std::conj(wl) * zl);
  double p = static_cast<double>(num / den);
  if (p > 1.0) p = 1.0;
  return {p, artanh_guarded(p)};
}

DistanceValue dist_halfplane(Complex u, Complex v, HalfPlane which) {
  if (which == HalfPlane::Right) {
    if (u.real() <= 0.0 || v.real() <= 0.0)
      throw Error(ErrorKind::Domain, "points must lie in the open right half-plane");
    LComplex ul = widen(u), vl = widen(v);
    long double p = std::abs(ul - vl) / std::abs(vl + std::conj(ul));
    double pd = static_cast<double>(p);
    if (pd > 1.0) pd = 1.0;
    return {pd, artanh_guarded(pd)};
  }
  if (u.imag() <= 0.0 || v.imag() <= 0.0)
    throw Error(ErrorKind::Domain, "points must lie in the open upper half-plane");
  LComplex ul = widen(u), vl = widen(v);
  long double p = std::abs(ul - vl) / std::abs(ul - std::conj(vl));
  double pd = static_cast<double>(p);
  if (pd > 1.0) pd = 1.0;
  return {pd, artanh_guarded(pd)};
}

std::pair<MapExpr, MapExpr> cayley_pair(Complex tau, HalfPlane target) {
  return {expr_cayley(tau, target), expr_cayley_inv(tau, target)};
}

VMembership v_membership(const MapExpr& map, double r, Complex z) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::Domain, "radius must lie in (0,1)");
  Complex fz = eval(map, z);
  double rho = dist_disc(z, fz).pseudo;
  VMembership m;
  m.rho = rho;
  m.margin = r - rho;
  m.member = m.margin > 0;
  m.indeterminate = std::abs(m.margin) < kVMembershipBand;
  return m;
}

VMembership v_membership_halfplane(const MapExpr& map, double r, Complex u, HalfPlane which) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::Domain, "radius must lie in (0,1)");
  Complex fu = eval(map, u);
  double rho = dist_halfplane(u, fu, which).pseudo;
  VMembership m;
  m.rho = rho;
  m.margin = r - rho;
  m.member = m.margin > 0;
  m.indeterminate = std::abs(m.margin) < kVMembershipBand;
  return m;
}

}  // namespace koenigs
