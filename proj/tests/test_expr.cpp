#include "chow/chow_ring.hpp"
#include "chow/errors.hpp"
#include "chow/expr.hpp"
#include "chow/invariant.hpp"
#include "doctest.h"

using namespace chow;

namespace {
TautClass ev(const char* text, int n) { return evaluate(parse_expression(text, n)); }
}  // namespace

TEST_CASE("atoms evaluate to the expected classes") {
  CHECK(ev("D(12|345)", 5) == TautClass::divisor(Partition2::parse("(12|345)", 5)));
  CHECK(ev("psi(2)", 6) == psi_expand(6, 2));
  CHECK(ev("kappa(1)", 6) == kappa_class(6, 1));
  CHECK(ev("S(1278|56|34)", 8) == TautClass::stratum(StableTree::parse_chain("(1278|56|34)", 8)));
  CHECK(ev("d(2,4)", 6) == d_class(6, parse_shape("2,4", 6)));
  CHECK(chow_equal(ev("psitilde(2)", 6), psi_power_sum(6, 2)));
  CHECK(ev("1", 5) == TautClass::fundamental(5));
}

TEST_CASE("operators and precedence") {
  const TautClass d = ev("D(12|345)", 5);
  CHECK(ev("2*D(12|345) - D(12|345)", 5) == d);
  CHECK(ev("-D(12|345) + 2*D(12|345)", 5) == d);
  CHECK(ev("D(12|345)/2*2", 5) == d);
  CHECK(ev("3/2*D(12|345)", 5) == d * Rational(3, 2));
  CHECK(ev("(1+1)*D(12|345)", 5) == d * Rational(2));
  CHECK(chow_equal(ev("D(12|345)^2", 5), mul(d, d)));
  CHECK(chow_equal(ev("psi(1)*psi(2) + psi(3)^2", 5), mul(psi_expand(5, 1), psi_expand(5, 2)) + power(psi_expand(5, 3), 2)));
  CHECK(integrate(ev("psi(1)^2", 5)) == Rational(1));
}

TEST_CASE("malformed expressions raise ParseError") {
  for (const char* bad : {"psi(", "psi(9)", "D(12|34)", "D(1|2345)", "2 +", "psi(1) psi(2)", "kappa(0)",
                          "D(12|345) + psi(1)^2", "x", "d(9,9)", "psi(1)/0", "S(12|3)"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(ev(bad, 5), ParseError);
  }
}

TEST_CASE("pull-back of expressions matches pull-back of classes") {
  for (const char* text : {"psi(1)", "kappa(1)", "D(12|345)", "psi(2)*D(13|245)", "kappa(2)"}) {
    CAPTURE(text);
    const TautExpr e = parse_expression(text, 5);
    for (int p : {1, 3, 6}) {
      CHECK(chow_equal(evaluate(pullback_expr(e, p)), pullback_forget(evaluate(e), p)));
    }
  }
}

TEST_CASE("expressions print and re-parse") {
  const TautExpr e = parse_expression("2*psi(1)^2 - kappa(1)*D(12|3456)", 6);
  CHECK(chow_equal(evaluate(parse_expression(e.to_string(), 6)), evaluate(e)));
}
