#include <doctest.h>

#include "mcforge/polynomial.hpp"

using namespace mcforge;
using namespace mcforge::expr;

TEST_CASE("parse and evaluate") {
  Vector x(3);
  x << 2.0, -1.0, 0.5;
  CHECK(parse("x1", 3)(x) == 2.0);
  CHECK(parse("-1", 3)(x) == -1.0);
  CHECK(parse("1.5e-1*x2 + x3^2", 3)(x) == doctest::Approx(-0.15 + 0.25));
  CHECK(parse("(x1 - x2)^3 - 2*x1*x3", 3)(x) == doctest::Approx(27.0 - 2.0));
  CHECK(parse("--x1", 3)(x) == 2.0);
  CHECK(parse("0", 3).is_constant());
}

TEST_CASE("derivatives and gradient") {
  const Polynomial p = parse("x1^2*x2 - 3*x3 + 4", 3);
  Vector x(3);
  x << 1.5, 2.0, -1.0;
  const Vector g = p.gradient(x);
  CHECK(g[0] == doctest::Approx(2.0 * 1.5 * 2.0));
  CHECK(g[1] == doctest::Approx(1.5 * 1.5));
  CHECK(g[2] == doctest::Approx(-3.0));
  CHECK(p.degree() == 3);
  CHECK(p.derivative(2).is_constant());
}

TEST_CASE("algebra of polynomials") {
  const Polynomial a = parse("x1 + x2", 2);
  const Polynomial b = parse("x1 - x2", 2);
  const Polynomial prod = a * b;
  const Polynomial want = parse("x1^2 - x2^2", 2);
  Vector x(2);
  x << 0.3, -0.7;
  CHECK(prod(x) == doctest::Approx(want(x)));
  CHECK((a - a).is_constant());
  CHECK((a - a)(x) == 0.0);
  CHECK(a.pow(0)(x) == 1.0);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse("x4", 3), ParseError);
  CHECK_THROWS_AS(parse("x0", 3), ParseError);
  CHECK_THROWS_AS(parse("x1 +", 3), ParseError);
  CHECK_THROWS_AS(parse("(x1", 3), ParseError);
  CHECK_THROWS_AS(parse("x1^x2", 3), ParseError);
  CHECK_THROWS_AS(parse("sin(x1)", 3), ParseError);
  try {
    parse("x1 * * x2", 2);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}
