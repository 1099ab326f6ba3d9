#include <doctest.h>

#include <cmath>

#include "koenigs/metric.hpp"
#include "test_helpers.hpp"

using namespace koenigs;
using namespace koenigs::testing;

namespace {

// Independent pseudohyperbolic oracle for the property tests.
double rho_oracle(Complex z, Complex w) {
  return std::abs(z - w) / std::abs(1.0 - std::conj(w) * z);
}

MapExpr disc_automorphism(Complex a, double angle) {
  // e^{i angle} (z - a)/(1 - conj(a) z)
  MapExpr z = expr_var();
  MapExpr num = expr_sub(z, expr_const(a));
  MapExpr den = expr_sub(expr_const(1.0), expr_mul(expr_const(std::conj(a)), z));
  return expr_mul(expr_const(std::polar(1.0, angle)), expr_div(num, den));
}

}  // namespace

TEST_CASE("dist_disc: closed-form values") {
  CHECK(dist_disc(Complex(0, 0), Complex(0.5, 0)).pseudo == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(dist_disc(Complex(0.3, -0.4), Complex(0.3, -0.4)).pseudo == 0.0);
  CHECK(dist_disc(Complex(0.5, 0), Complex(-0.5, 0)).pseudo ==
        doctest::Approx(0.8).epsilon(1e-14));
  CHECK_THROWS_AS((void)dist_disc(Complex(1.0, 0), Complex(0, 0)), Error);

  DistanceValue d = dist_disc(Complex(0, 0), Complex(1.0 / 3.0, 0));
  CHECK(d.hyperbolic == doctest::Approx(std::atanh(1.0 / 3.0)).epsilon(1e-13));
}

TEST_CASE("dist_halfplane: shifted points") {
  // Upper half-plane: rho*(w, w+1) = 1/sqrt(1 + 4 Im(w)^2).
  CHECK(dist_halfplane(Complex(0, 1), Complex(1, 1), HalfPlane::Upper).pseudo ==
        doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));
  CHECK(dist_halfplane(Complex(0, 2), Complex(1, 2), HalfPlane::Upper).pseudo ==
        doctest::Approx(1.0 / std::sqrt(17.0)).epsilon(1e-14));
  CHECK(dist_halfplane(Complex(1, 0), Complex(1, 0), HalfPlane::Right).pseudo == 0.0);
  CHECK_THROWS_AS((void)dist_halfplane(Complex(-1, 0), Complex(1, 0), HalfPlane::Right), Error);
}

TEST_CASE("artanh guard") {
  CHECK(std::isfinite(artanh_guarded(1.0)));
  CHECK(artanh_guarded(0.0) == 0.0);
  CHECK_THROWS_AS((void)artanh_guarded(-0.1), Error);
}

TEST_CASE("cayley_pair: round trips and landmark values") {
  auto [c, c_inv] = cayley_pair(Complex(1, 0), HalfPlane::Right);
  CHECK(std::abs(eval(c, Complex(0, 0)) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(eval(c, Complex(0.5, 0)) - Complex(3, 0)) < 1e-15);

  auto [ci, ci_inv] = cayley_pair(Complex(0, 1), HalfPlane::Right);
  CHECK(std::abs(eval(ci, Complex(0, 0)) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(eval(ci_inv, Complex(1, 0)) - Complex(0, 0)) < 1e-15);

  TreeGen gen(123u);
  for (int i = 0; i < 50; ++i) {
    Complex z = gen.disc_point();
    CHECK(std::abs(eval(c_inv, eval(c, z)) - z) < 1e-12);
  }
}

TEST_CASE("v_membership: parabolic automorphism landmarks") {
  MapExpr phi = cayley_translate(Complex(1, 0), HalfPlane::Upper);
  MapExpr u_inv = expr_cayley_inv(Complex(1, 0), HalfPlane::Upper);

  Complex z_in = eval(u_inv, Complex(0, 2));
  VMembership m = v_membership(phi, 1.0 / 3.0, z_in);
  CHECK(m.rho == doctest::Approx(1.0 / std::sqrt(17.0)).epsilon(1e-10));
  CHECK(m.member);

  Complex z_out = eval(u_inv, Complex(0, 1));
  m = v_membership(phi, 1.0 / 3.0, z_out);
  CHECK(m.rho == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-10));
  CHECK_FALSE(m.member);

  // The membership threshold in half-plane coordinates is Im w = sqrt(2)
  // for r = 1/3: check both sides of it.
  double y_threshold = std::sqrt(1.0 - 1.0 / 9.0) / (2.0 / 3.0);
  CHECK(y_threshold == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(v_membership(phi, 1.0 / 3.0, eval(u_inv, Complex(0, y_threshold + 0.05))).member);
  CHECK_FALSE(v_membership(phi, 1.0 / 3.0, eval(u_inv, Complex(0, y_threshold - 0.05))).member);

  m = v_membership(parsed("z"), 0.5, Complex(0.3, 0.2));
  CHECK(m.rho == 0.0);
  CHECK(m.member);
}

TEST_CASE("property: moebius invariance of the disc distance") {
  TreeGen gen(0xAB12u);
  for (int i = 0; i < 200; ++i) {
    MapExpr aut = disc_automorphism(gen.disc_point(0.8), 2 * M_PI * gen.unit());
    Complex z = gen.disc_point(), w = gen.disc_point();
    double before = dist_disc(z, w).pseudo;
    double after = dist_disc(eval(aut, z), eval(aut, w)).pseudo;
    CHECK(std::abs(before - after) < 1e-12);
    CHECK(std::abs(before - rho_oracle(z, w)) < 1e-12);
  }
}

TEST_CASE("property: cayley transforms are isometries") {
  TreeGen gen(0xCD34u);
  for (HalfPlane target : {HalfPlane::Right, HalfPlane::Upper}) {
    auto [c, c_inv] = cayley_pair(Complex(1, 0), target);
    for (int i = 0; i < 100; ++i) {
      Complex z = gen.disc_point(), w = gen.disc_point();
      double in_disc = dist_disc(z, w).pseudo;
      double in_plane = dist_halfplane(eval(c, z), eval(c, w), target).pseudo;
      CHECK(std::abs(in_disc - in_plane) < 1e-10);
    }
  }
}

TEST_CASE("property: triangle-style perturbation bound") {
  // rho*(z, f(z)) < a and rho*(z, w) < b force rho*(w, f(w)) < a + 2b.
  TreeGen gen(0xEF56u);
  MapExpr psi = slit_translate(1.0);
  for (int i = 0; i < 300; ++i) {
    Complex z = gen.disc_point(), w = gen.disc_point();
    double a = dist_disc(z, eval(psi, z)).pseudo;
    double b = dist_disc(z, w).pseudo;
    double lhs = dist_disc(w, eval(psi, w)).pseudo;
    CHECK(lhs <= a + 2 * b + 1e-12);
  }
}
