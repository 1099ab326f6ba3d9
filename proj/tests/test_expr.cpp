#include <doctest.h>

#include <cmath>

#include "koenigs/orbit.hpp"
#include "test_helpers.hpp"

using namespace koenigs;
using namespace koenigs::testing;

TEST_CASE("eval: direct substitution") {
  CHECK(std::abs(eval(parsed("(1+z^2)/2"), Complex(0, 0)) - Complex(0.5, 0)) < 1e-15);
  CHECK(std::abs(eval(parsed("((1+z)/(1-z))^2"), Complex(0.5, 0)) - Complex(9, 0)) < 1e-13);
}

TEST_CASE("eval: slit translation at the origin") {
  // Oracle: solve h(w) = 2 with the principal square root, then cross-check
  // by forward evaluation of h.
  Complex root = (std::sqrt(2.0) - 1.0) / (std::sqrt(2.0) + 1.0);
  REQUIRE(std::abs(slit_oracle(root) - 2.0) < 1e-14);
  REQUIRE(std::abs(root - (3.0 - 2.0 * std::sqrt(2.0))) < 1e-15);

  MapExpr phi = slit_translate(1.0);
  CHECK(std::abs(eval(phi, Complex(0, 0)) - root) < 1e-14);
}

TEST_CASE("eval: error paths") {
  CHECK_THROWS_WITH_AS((void)eval(parsed("1/z"), Complex(0, 0)), "division by zero", Error);
  CHECK_THROWS_AS((void)eval(parsed("sqrt(z - 4)"), Complex(0, 0)), Error);
  try {
    (void)eval(parsed("sqrt(z - 4)"), Complex(0, 0));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
  // Principal branch just off the cut: arguments in (-pi, pi].
  Complex just_above = eval(parsed("sqrt(z)"), Complex(-4, 1e-12));
  CHECK(just_above.imag() > 0);
  Complex just_below = eval(parsed("sqrt(z)"), Complex(-4, -1e-12));
  CHECK(just_below.imag() < 0);
}

TEST_CASE("deriv: structural differentiation") {
  CHECK(std::abs(deriv(parsed("(1+z^2)/2"), Complex(0.5, 0)) - Complex(0.5, 0)) < 1e-15);
  CHECK(std::abs(deriv(parsed("(z+1)/2"), Complex(0.3, -0.2)) - Complex(0.5, 0)) < 1e-15);

  // h'(z) = 2 (1+z)/(1-z) * 2/(1-z)^2 gives h'(0) = 4; confirm against a
  // central finite difference, which is the independent oracle here.
  MapExpr h = slit_h();
  Complex at0 = deriv(h, Complex(0, 0));
  CHECK(std::abs(at0 - Complex(4, 0)) < 1e-14);
  double fd_step = 1e-6;
  Complex fd = (slit_oracle(Complex(fd_step, 0)) - slit_oracle(Complex(-fd_step, 0))) /
               (2.0 * fd_step);
  CHECK(std::abs(at0 - fd) < 1e-6);
}

TEST_CASE("compose: identity and affine laws") {
  MapExpr f = parsed("(1+z^2)/2");
  MapExpr idf = compose(parsed("z"), f);
  for (Complex z : {Complex(0, 0), Complex(0.3, 0.2), Complex(-0.5, 0.1)})
    CHECK(std::abs(eval(idf, z) - eval(f, z)) < 1e-15);

  MapExpr a = parsed("(z+1)/2");
  CHECK(std::abs(eval(compose(a, a), Complex(0, 0)) - Complex(0.75, 0)) < 1e-15);
}

TEST_CASE("compose: slit translations add") {
  MapExpr lhs = compose(slit_translate(1.0), slit_translate(2.0));
  MapExpr rhs = slit_translate(3.0);
  Complex z(0.3, 0.2);
  CHECK(std::abs(eval(lhs, z) - eval(rhs, z)) <= 1e-12);
}

TEST_CASE("iterate: recurrences and stopping") {
  Orbit o = iterate_map(parsed("(1+z^2)/2"), Complex(0, 0), 3);
  REQUIRE(o.points.size() == 4);
  CHECK(std::abs(o.points[1] - Complex(0.5, 0)) < 1e-15);
  CHECK(std::abs(o.points[2] - Complex(0.625, 0)) < 1e-15);
  CHECK(std::abs(o.points[3] - Complex(0.6953125, 0)) < 1e-15);
  CHECK(o.stop == StopReason::ReachedLimit);

  Orbit id_orbit = iterate_map(parsed("z"), Complex(0.3, 0.1), 100);
  CHECK(id_orbit.stop == StopReason::Stagnated);
  CHECK(id_orbit.points.size() <= 5);

  Orbit affine = iterate_map(parsed("(z+1)/2"), Complex(0, 0), 4);
  REQUIRE(affine.points.size() == 5);
  CHECK(std::abs(affine.points[4] - Complex(0.9375, 0)) < 1e-15);

  CHECK_THROWS_AS((void)iterate_map(parsed("2*z + 2"), Complex(0.5, 0), 4), Error);
}

TEST_CASE("property: chain rule on random trees") {
  TreeGen gen(0xC0FFEEu);
  int checked = 0;
  while (checked < 200) {
    MapExpr f = gen.gen(4), g = gen.gen(4);
    Complex z = gen.disc_point();
    Complex lhs, rhs;
    try {
      Complex gz = eval(g, z);
      lhs = deriv(compose(f, g), z);
      rhs = deriv(f, gz) * deriv(g, z);
    } catch (const Error&) {
      continue;  // outside a component's domain; draw again
    }
    double scale = std::max(1.0, std::abs(rhs));
    CHECK(std::abs(lhs - rhs) / scale < 1e-10);
    ++checked;
  }
}

TEST_CASE("property: orbit ledger matches the composed-tree derivative") {
  MapExpr phi = parsed("(2 + z^2)/3");
  Complex z0(0.31, 0.17);
  Orbit orbit = iterate_map(phi, z0, 12);
  REQUIRE(orbit.steps() == 12);

  MapExpr composed = parsed("z");
  for (int n = 1; n <= 12; ++n) {
    composed = compose(phi, composed);
    Complex direct = deriv(composed, z0);
    double log_mag = orbit.log_mag_of_iterate_deriv(n);
    CHECK(std::abs(std::exp(log_mag) - std::abs(direct)) / std::abs(direct) < 1e-8);
  }
}

TEST_CASE("builders: invariants enforced") {
  CHECK_THROWS_AS((void)expr_const(Complex(1.0 / 0.0, 0)), Error);
  CHECK_THROWS_AS((void)expr_cayley(Complex(2, 0), HalfPlane::Right), Error);
  CHECK_THROWS_AS((void)expr_pow(expr_var(), -1), Error);
}
