#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jetph/expression.hpp"
#include "jetph/parser.hpp"

using namespace jetph;

namespace {

Chart plate_chart() { return Chart{{"t", "X", "Y"}, {"w", "psi", "phi"}}; }

Expression parse(const std::string& s) { return parse_expression(s, plate_chart()); }

// Random polynomial over a few jets and parameters of the plate chart.
Expression random_expression(std::mt19937_64& rng, int max_jet_order = 1) {
  std::vector<Expression> atoms = {
      Expression::jet("w"),
      Expression::jet("w", {"X"}),
      Expression::jet("psi", {"Y"}),
      Expression::jet("phi", {"t"}),
      Expression::parameter("a"),
      Expression::parameter("b"),
  };
  if (max_jet_order >= 2) atoms.push_back(Expression::jet("w", {"X", "Y"}));
  Expression e(0);
  int terms = 1 + (int)(rng() % 4);
  for (int i = 0; i < terms; ++i) {
    Expression term(Rational(1 + (long long)(rng() % 5), 1 + (long long)(rng() % 3)));
    int nfac = 1 + (int)(rng() % 3);
    for (int f = 0; f < nfac; ++f) term = term * atoms[rng() % atoms.size()];
    e = (rng() % 2) ? e + term : e - term;
  }
  return e;
}

}  // namespace

TEST_CASE("rational arithmetic normalizes and reduces") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(3, 4) * Rational(2, 3)) == Rational(1, 2));
  CHECK((Rational(1, 2) / Rational(3, 2)) == Rational(1, 3));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK(Rational(7).str() == "7");
  CHECK(Rational(-3, 4).str() == "-3/4");
  CHECK_THROWS_AS(Rational(1, 0), Error);
}

TEST_CASE("rational overflow raises instead of wrapping") {
  Rational big(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(big * big, Error);
  try {
    big* big;
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Overflow);
  }
}

TEST_CASE("symbol canonicalizes multi-index order") {
  CHECK(Symbol::jet("w", {"Y", "X"}) == Symbol::jet("w", {"X", "Y"}));
  CHECK(Symbol::jet("w", {"X", "t"}).str() == "w_tX");
  CHECK_THROWS_AS(Symbol::jet("w", {"X", "X", "Y"}), Error);
}

TEST_CASE("additive identity and zero representation") {
  Expression e = parse("3*w_X^2 - psi");
  CHECK(e + Expression(0) == e);
  CHECK((e - e).is_zero());
  CHECK((e - e).str() == "0");
}

TEST_CASE("mixed partials are the same coordinate") {
  CHECK((parse("w_XY") - parse("w_YX")).is_zero());
}

TEST_CASE("binomial expansion is canonical") {
  Expression lhs = parse("(psi_Y + phi_X)^2");
  Expression rhs = parse("psi_Y^2 + 2*psi_Y*phi_X + phi_X^2");
  CHECK(lhs == rhs);
}

TEST_CASE("normalize is idempotent on random expressions") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 50; ++i) {
    Expression e = random_expression(rng, 2);
    CHECK(normalize(e) == e);
    CHECK(normalize(normalize(e)) == normalize(e));
  }
}

TEST_CASE("partial derivative treats jets as independent symbols") {
  // d/d(w_X) of k*G*h/2*(w_X - psi)^2 = k*G*h*(w_X - psi)
  Expression v = parse("1/2*k*G*h*(w_X - psi)^2");
  Expression got = v.partial(Symbol::jet("w", {"X"}));
  CHECK(equivalent(got, parse("k*G*h*(w_X - psi)")));
  // parameters differentiate to zero against jets
  CHECK(parse("c").partial(Symbol::jet("w")).is_zero());
  CHECK(parse("w_X*psi").partial(Symbol::jet("psi")) == parse("w_X"));
}

TEST_CASE("total derivative raises jet multi-indices") {
  CHECK(parse("w").total_derivative("X") == parse("w_X"));
  CHECK(equivalent(parse("w_X^2").total_derivative("X"), parse("2*w_X*w_XX")));
  CHECK(equivalent(parse("rho*h*w_t").total_derivative("t"), parse("rho*h*w_tt")));
}

TEST_CASE("total derivative differentiates explicit coordinate parameters") {
  Chart c{{"t", "X"}, {"w"}};
  Expression e = parse_expression("X^2*w", c);
  CHECK(equivalent(e.total_derivative("X"), parse_expression("2*X*w + X^2*w_X", c)));
}

TEST_CASE("total derivative past the order cap raises") {
  Expression e = parse("w_XY");
  CHECK_THROWS_AS(e.total_derivative("X"), Error);
  try {
    e.total_derivative("X");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::OrderOverflow);
  }
}

TEST_CASE("linearity of partial and total derivative") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 25; ++i) {
    Expression e1 = random_expression(rng), e2 = random_expression(rng);
    Rational a(2 + (long long)(rng() % 5), 1 + (long long)(rng() % 3));
    Rational b(-(long long)(1 + rng() % 4), 1 + (long long)(rng() % 2));
    Expression combo = a * e1 + b * e2;
    Symbol v = Symbol::jet("w", {"X"});
    CHECK(combo.partial(v) == a * e1.partial(v) + b * e2.partial(v));
    CHECK(combo.total_derivative("Y") ==
          a * e1.total_derivative("Y") + b * e2.total_derivative("Y"));
  }
}

TEST_CASE("Leibniz rule for the total derivative") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 25; ++i) {
    Expression e1 = random_expression(rng), e2 = random_expression(rng);
    // keep the product inside the order cap: both factors are order <= 1
    Expression lhs = (e1 * e2).total_derivative("X");
    Expression rhs = e1.total_derivative("X") * e2 + e1 * e2.total_derivative("X");
    CHECK(lhs == rhs);
  }
}

TEST_CASE("total derivatives commute") {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 25; ++i) {
    // order-0 expressions so both compositions stay within order 2
    Expression e(0);
    for (int t = 0; t < 3; ++t) {
      Expression term(Rational(1 + (long long)(rng() % 7)));
      term = term * Expression::jet("w") * Expression::jet("psi");
      if (rng() % 2) term = term * Expression::parameter("a");
      e = e + term;
    }
    CHECK(e.total_derivative("X").total_derivative("Y") ==
          e.total_derivative("Y").total_derivative("X"));
  }
}

TEST_CASE("substitution is simultaneous and normalizes") {
  Expression e = parse("w_t^2");
  std::map<Symbol, Expression> b;
  b[Symbol::jet("w", {"t"})] = parse("p / (rho*h)");
  Expression got = e.substitute(b);
  CHECK(equivalent(got, parse("p^2 / (rho^2*h^2)")));

  // simultaneous: x -> y, y -> x swaps rather than chains
  Chart c{{"t"}, {"x", "y"}};
  std::map<Symbol, Expression> swap;
  swap[Symbol::jet("x")] = Expression::jet("y");
  swap[Symbol::jet("y")] = Expression::jet("x");
  Expression pair = parse_expression("x + 2*y", c).substitute(swap);
  CHECK(pair == parse_expression("y + 2*x", c));

  CHECK(e.substitute({}) == e);
}

TEST_CASE("negative powers of jets are rejected") {
  CHECK_THROWS_AS(parse("1/w"), Error);
  CHECK_THROWS_AS(parse("w^-1"), Error);
  CHECK_THROWS_AS(parse("1/(w_X + psi)"), Error);  // non-monomial divisor
  // parameters invert fine
  CHECK(equivalent(parse("a/b"), parse("a*b^-1")));
}

TEST_CASE("equivalence accepts rearrangements and rejects differences") {
  CHECK(equivalent(parse("(w_X - psi)^2"), parse("w_X^2 - 2*w_X*psi + psi^2")));
  CHECK(!equivalent(parse("w_X"), parse("w_Y")));
  CHECK(!equivalent(parse("w_X + 1"), parse("w_X")));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    Expression e = random_expression(rng, 2);
    CHECK(equivalent(e, normalize(e)));
    CHECK(!equivalent(e, e + Expression(1)));
  }
}

TEST_CASE("exact evaluation matches double evaluation") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    Expression e = random_expression(rng);
    std::map<Symbol, Rational> pt;
    std::map<Symbol, double> dpt;
    for (const auto& s : e.symbols()) {
      Rational r(1 + (long long)(rng() % 9), 1 + (long long)(rng() % 4));
      pt[s] = r;
      dpt[s] = r.to_double();
    }
    CHECK(e.evaluate_exact(pt).to_double() == doctest::Approx(e.evaluate(dpt)).epsilon(1e-12));
  }
}

TEST_CASE("printer and parser round-trip canonical forms") {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 60; ++i) {
    Expression e = random_expression(rng, 2);
    CHECK(parse(e.str()) == e);
  }
  // negative leading coefficient, rational coefficients, powers
  for (const char* s : {"-w_X", "-3/4*w + psi^2", "w_tX", "a^-2*w", "0"}) {
    Expression e = parse(s);
    CHECK(parse(e.str()) == e);
  }
}

TEST_CASE("parser resolves underscored dependents and any letter order") {
  Chart h{{"X", "Y"}, {"w", "p_w"}};
  CHECK(parse_expression("p_w", h) == Expression::jet("p_w"));
  CHECK(parse_expression("p_w_X", h) == Expression::jet("p_w", {"X"}));
  CHECK(parse_expression("w_YX", h) == parse_expression("w_XY", h));
  CHECK(parse_expression("unbound_name", h) == Expression::parameter("unbound_name"));
  CHECK_THROWS_AS(parse_expression("w_a", h), Error);   // bad derivative letter
  CHECK_THROWS_AS(parse_expression("w_X +", h), Error);  // dangling operator
  CHECK_THROWS_AS(parse_expression("(w_X", h), Error);   // unbalanced parens
  // independents as factors denote explicit coordinate dependence
  CHECK(parse_expression("X + w", h) == Expression::parameter("X") + Expression::jet("w"));
}

TEST_CASE("chart and density validation") {
  Chart good{{"t", "X", "Y"}, {"w", "psi", "phi"}};
  good.validate();
  CHECK_THROWS_AS((Chart{{"t", "t"}, {"w"}}.validate()), Error);
  CHECK_THROWS_AS((Chart{{"XY"}, {"w"}}.validate()), Error);
  CHECK_THROWS_AS((Chart{{"X", "t"}, {"w"}}.validate()), Error);

  Density d{good, parse("w_X^2")};
  d.validate(1);
  Density too_deep{good, parse("w_X^2").total_derivative("X")};
  CHECK_THROWS_AS(too_deep.validate(1), Error);
  Density unknown{Chart{{"t", "X"}, {"u"}}, parse("w_X")};
  CHECK_THROWS_AS(unknown.validate(1), Error);
  // parameter colliding with a field name
  Density collide{good, Expression::parameter("w") * Expression::jet("psi")};
  CHECK_THROWS_AS(collide.validate(1), Error);
  // explicit coordinate dependence is fine
  Density coord{good, Expression::parameter("X") * Expression::jet("w", {"X"})};
  coord.validate(1);
}

TEST_CASE("substitute_fields takes polynomial coordinate derivatives") {
  Chart c{{"t", "X"}, {"w"}};
  // w(t, X) = X^2 * t: w_X = 2*X*t, w_XX = 2*t, w_tX = 2*X
  std::map<std::string, Expression> sec;
  sec["w"] = parse_expression("X^2 * t", c);
  Expression e = parse_expression("w_XX + w_tX + w_X", c);
  Expression got = substitute_fields(e, c, sec);
  CHECK(equivalent(got, parse_expression("2*t + 2*X + 2*X*t", c)));
}
