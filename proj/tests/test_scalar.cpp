#include <gtest/gtest.h>

#include "cotton/errors.hpp"
#include "cotton/parser.hpp"
#include "cotton/polynomial.hpp"
#include "cotton/rational.hpp"
#include "cotton/sampling.hpp"

using namespace cotton;

namespace {

const std::vector<std::string> kTSX{"t", "s", "x"};

}  // namespace

TEST(Rational, ParsesCanonicalForms) {
  EXPECT_EQ(Rational::parse("3/6").to_string(), "1/2");
  EXPECT_EQ(Rational::parse("-4/2").to_string(), "-2");
  EXPECT_EQ(Rational::parse("7").to_string(), "7");
  EXPECT_EQ(Rational::parse("0").to_string(), "0");
}

TEST(Rational, ReadsDecimalsExactly) {
  EXPECT_EQ(Rational::parse("2.5"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("-0.125"), Rational(-1, 8));
  EXPECT_EQ(Rational::parse("0.1") * Rational(10), Rational(1));
  EXPECT_EQ(Rational::parse("0.025"), Rational(1, 40));
}

TEST(Rational, LeadingZerosAreDecimal) {
  EXPECT_EQ(Rational::parse("010"), Rational(10));
  EXPECT_EQ(Rational::parse("010/07"), Rational(10, 7));
  EXPECT_EQ(parse_expr("010*t", {"t"}).to_string(), "10*t");
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "abc", "1//2", "1.2.3", "--1", "1/"}) {
    EXPECT_THROW(Rational::parse(bad), InputError) << bad;
  }
}

TEST(Rational, OrderingAndArithmetic) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ((Rational(-3, 4)).abs(), Rational(3, 4));
  EXPECT_DOUBLE_EQ(Rational(1, 4).to_double(), 0.25);
}

TEST(Parser, ModelComponentRoundTrips) {
  const Polynomial p = parse_expr("x^3 + t*x", kTSX);
  EXPECT_EQ(p.to_string(), "x^3 + t*x");
  EXPECT_EQ(parse_expr(p.to_string(), kTSX), p);
}

TEST(Parser, RationalCoefficients) {
  const Polynomial p = parse_expr("t/2 + 1/3", {"t"});
  EXPECT_EQ(p.to_string(), "1/2*t + 1/3");
  EXPECT_EQ(parse_expr("-3/2*t^2", {"t"}).to_string(), "-3/2*t^2");
  EXPECT_EQ(parse_expr("-(t - 1)^2", {"t"}).to_string(), "-t^2 + 2*t - 1");
}

TEST(Parser, ReportsErrorsWithPositions) {
  EXPECT_THROW(parse_expr("x + y", {"x"}), ParseError);
  EXPECT_THROW(parse_expr("x^-1", {"x"}), ParseError);
  EXPECT_THROW(parse_expr("x^1.5", {"x"}), ParseError);
  EXPECT_THROW(parse_expr("", {"x"}), ParseError);
  EXPECT_THROW(parse_expr("x/0", {"x"}), ParseError);
  EXPECT_THROW(parse_expr("x/y", {"x", "y"}), ParseError);
  EXPECT_THROW(parse_expr("2.5*x", {"x"}), ParseError);
  EXPECT_THROW(parse_expr("x^^3", {"x"}), ParseError);
  EXPECT_THROW(parse_expr("(x + 1", {"x"}), ParseError);
  try {
    parse_expr("x + q", {"x"});
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(Polynomial, DerivativeMatchesHandComputation) {
  const Polynomial p = parse_expr("x^3 + t*x", kTSX);
  EXPECT_EQ(p.derivative(2), parse_expr("3*x^2 + t", kTSX));
  EXPECT_EQ(p.derivative(0), parse_expr("x", kTSX));
  EXPECT_TRUE(p.derivative(1).is_zero());
  EXPECT_EQ(p.total_degree(), 3u);
  EXPECT_EQ(p.degree_in(0), 1u);
}

TEST(Polynomial, EvaluatesExactly) {
  const Polynomial p = parse_expr("x^3 + t*x", kTSX);
  const std::vector<Rational> pt{Rational(1, 2), Rational(0), Rational(2)};
  EXPECT_EQ(p.evaluate<Rational>(pt), Rational(9));
}

TEST(Polynomial, RebasingDropsOnlyUnusedVariables) {
  const Polynomial a = parse_expr("t^2 - 1", {"t"});
  const Polynomial lifted = a.rebased(kTSX);
  EXPECT_EQ(lifted.to_string(), "t^2 - 1");
  EXPECT_THROW(parse_expr("t*x", kTSX).rebased({"t"}), ArityMismatch);
}

TEST(PolynomialProperty, ParseOfCanonicalTextIsIdentity) {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const Polynomial p = random_polynomial(rng, kTSX, 4, 9, 0.4);
    EXPECT_EQ(parse_expr(p.to_string(), kTSX), p) << p.to_string();
  }
}

TEST(PolynomialProperty, EvaluationIsARingMap) {
  Rng rng(12);
  for (int k = 0; k < 100; ++k) {
    const Polynomial p = random_polynomial(rng, kTSX, 3, 5, 0.5);
    const Polynomial q = random_polynomial(rng, kTSX, 3, 5, 0.5);
    const auto pt = random_point(rng, 3);
    EXPECT_EQ((p * q).evaluate<Rational>(pt), p.evaluate<Rational>(pt) * q.evaluate<Rational>(pt));
    EXPECT_EQ((p + q).evaluate<Rational>(pt), p.evaluate<Rational>(pt) + q.evaluate<Rational>(pt));
  }
}

TEST(PolynomialProperty, LeibnizRule) {
  Rng rng(13);
  for (int k = 0; k < 100; ++k) {
    const Polynomial p = random_polynomial(rng, kTSX, 3, 5, 0.5);
    const Polynomial q = random_polynomial(rng, kTSX, 3, 5, 0.5);
    for (std::size_t v = 0; v < 3; ++v) {
      EXPECT_EQ((p * q).derivative(v), p.derivative(v) * q + p * q.derivative(v));
    }
  }
}
