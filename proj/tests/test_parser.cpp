#include <doctest.h>

#include <random>

#include "test_helpers.hpp"

using namespace koenigs;
using namespace koenigs::testing;

TEST_CASE("parse: grammar basics") {
  CHECK(std::abs(eval(parsed("(1+z^2)/2"), Complex(0, 0)) - Complex(0.5, 0)) < 1e-15);
  CHECK(std::abs(eval(parsed("2i"), Complex(0, 0)) - Complex(0, 2)) < 1e-15);
  CHECK(std::abs(eval(parsed("(1+2i)"), Complex(0, 0)) - Complex(1, 2)) < 1e-15);
  CHECK(std::abs(eval(parsed("neg(z)"), Complex(0.25, -0.5)) - Complex(-0.25, 0.5)) < 1e-15);
  // Precedence: power binds tighter than unary minus, which binds tighter
  // than multiplication.
  CHECK(std::abs(eval(parsed("-z^2"), Complex(2, 0)) - Complex(-4, 0)) < 1e-15);
  CHECK(std::abs(eval(parsed("1 - 2 * 3"), Complex(0, 0)) - Complex(-5, 0)) < 1e-15);
  CHECK(std::abs(eval(parsed("2^3^1"), Complex(0, 0)) - Complex(8, 0)) < 1e-15);
}

TEST_CASE("parse: cayley forms") {
  MapExpr composed = parsed("compose(icayley(tau=1,to=RH), cayley(tau=1,to=RH) + 1)");
  CHECK(std::abs(eval(composed, Complex(0, 0)) - Complex(1.0 / 3.0, 0)) < 1e-15);

  MapExpr c = parsed("cayley(tau=1, to=RH)");
  CHECK(std::abs(eval(c, Complex(0, 0)) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(eval(c, Complex(0.5, 0)) - Complex(3, 0)) < 1e-15);

  MapExpr upper = parsed("cayley(tau=1, to=H)");
  CHECK(std::abs(eval(upper, Complex(0, 0)) - Complex(0, 1)) < 1e-15);

  // tau expressions are folded to constants; non-constant tau is an error.
  CHECK(parse_map("cayley(tau=1i, to=H)").ok());
  CHECK_FALSE(parse_map("cayley(tau=z, to=H)").ok());
  CHECK_FALSE(parse_map("cayley(tau=2, to=H)").ok());
}

TEST_CASE("parse: diagnostics carry byte offsets") {
  ParseResult r = parse_map("z^");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error->offset == 2);

  r = parse_map("(1+z");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error->offset == 4);

  r = parse_map("foo(z)");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error->offset == 0);
  CHECK(r.error->message.find("unknown identifier") != std::string::npos);

  r = parse_map("1.x");
  REQUIRE_FALSE(r.ok());
}

TEST_CASE("format: canonical text re-parses") {
  for (const char* src : {"(1+z^2)/2", "compose(icayley(tau=1,to=RH), cayley(tau=1,to=RH) + 1)",
                          "sqrt(z + 3) - 2i*z", "-z^2 + neg(z)/(1 - z)"}) {
    MapExpr m = parsed(src);
    std::string text = format_map(m);
    MapExpr again = parsed(text);
    for (Complex z : {Complex(0, 0), Complex(0.4, 0.3), Complex(-0.2, -0.6)})
      CHECK(std::abs(eval(m, z) - eval(again, z)) < 1e-14);
  }
  CHECK(format_map(parsed("compose(z, z)")).find("compose(") != std::string::npos);
}

TEST_CASE("property: parse/format round trip on random trees") {
  TreeGen gen(0xF00Du);
  int checked = 0;
  while (checked < 100) {
    MapExpr m = gen.gen(8);
    MapExpr again = parsed(format_map(m));
    bool used = false;
    for (int i = 0; i < 20; ++i) {
      Complex z = gen.disc_point();
      Complex a, b;
      try {
        a = eval(m, z);
        b = eval(again, z);
      } catch (const Error&) {
        continue;
      }
      CHECK(std::abs(a - b) <= 1e-14 * std::max(1.0, std::abs(a)));
      used = true;
    }
    if (used) ++checked;
  }
}

TEST_CASE("property: no crash on random byte strings") {
  std::mt19937_64 rng(20240815u);
  std::uniform_int_distribution<int> len(0, 40);
  std::uniform_int_distribution<int> byte(0, 255);
  const std::string alphabet = "z01239.+-*/^()iecompsqrtcayleyRH,= ";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string s;
    int n = len(rng);
    bool structured = trial % 2 == 0;
    for (int i = 0; i < n; ++i)
      s += structured ? alphabet[pick(rng)] : static_cast<char>(byte(rng));
    ParseResult r = parse_map(s);  // must not throw or crash
    if (!r.ok()) CHECK(r.error->offset <= s.size());
  }
}
