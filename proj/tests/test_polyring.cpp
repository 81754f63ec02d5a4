#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "dlchow/arith.hpp"
#include "dlchow/multipoly.hpp"
#include "dlchow/unipoly.hpp"

using namespace dlchow;

namespace {

MultiPoly X(int i) { return MultiPoly::variable(xvar(i)); }
MultiPoly Y(int i) { return MultiPoly::variable(yvar(i)); }
MultiPoly Q() { return MultiPoly::variable(qvar()); }

MultiPoly random_poly(std::mt19937& rng, int vars, int terms, int max_exp) {
  std::uniform_int_distribution<int> coeff(-5, 5), exp(0, max_exp), bank(0, 3);
  MultiPoly p;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    for (int i = 1; i <= vars; ++i) m.set_exponent(xvar(i), exp(rng));
    if (bank(rng) == 0) m.set_exponent(yvar(1), exp(rng));
    if (bank(rng) == 0) m.set_exponent(qvar(), exp(rng));
    p += MultiPoly::term(m, Rational(coeff(rng)));
  }
  return p;
}

MultiPoly swap_x(const MultiPoly& f, int i) {
  return substitute(f, {{xvar(i), X(i + 1)}, {xvar(i + 1), X(i)}}, MissingVar::KeepAsIs);
}

QPoly qp(std::string_view s) { return parse_qpoly(s); }

} // namespace

TEST(Rational, NormalizesAndOrders) {
  Rational a(Integer(6), Integer(-4));
  EXPECT_EQ(a.num(), Integer(-3));
  EXPECT_EQ(a.den(), Integer(2));
  EXPECT_EQ(a.to_string(), "-3/2");
  EXPECT_EQ(Rational(1) / Rational(3) + Rational(1) / Rational(6), Rational(Integer(1), Integer(2)));
  EXPECT_LT(Rational(Integer(1), Integer(3)), Rational(Integer(1), Integer(2)));
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
  EXPECT_THROW(Rational(Integer(1), Integer(0)), std::domain_error);
}

TEST(Rational, ParseRoundTrip) {
  for (const char* s : {"0", "7", "-7", "5/3", "-12/7"}) EXPECT_EQ(Rational::parse(s).to_string(), s);
  EXPECT_EQ(Rational::parse("4/6"), Rational(Integer(2), Integer(3)));
  EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, BigValuesStayExact) {
  Integer f = factorial(30);
  EXPECT_EQ(f.str(), "265252859812191058636308480000000");
  Rational r = Rational(f) / Rational(factorial(28));
  EXPECT_EQ(r, Rational(870));
}

TEST(UniPoly, ArithmeticAndText) {
  QPoly p = qp("q^2+2*q+1");
  EXPECT_EQ(p, qp("(q+1)^2"));
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p.to_string("q"), "q^2+2*q+1");
  EXPECT_EQ((p - p).to_string("q"), "0");
  EXPECT_EQ(qp("q-1") * qp("q+1"), qp("q^2-1"));
  EXPECT_EQ(p.eval(Rational(2)), Rational(9));
  EXPECT_THROW(QPoly().degree(), std::domain_error);
}

TEST(UniPoly, LaurentNegativeExponents) {
  LaurentPoly a = parse_laurent("x^-1 - 1");
  EXPECT_TRUE(a.has_negative_exponents());
  EXPECT_EQ(a.shifted(1), parse_laurent("1 - x"));
  EXPECT_EQ(a.eval(Rational(2)), Rational(Integer(-1), Integer(2)));
  EXPECT_THROW(a.eval(Rational(0)), std::domain_error);
}

TEST(UniPoly, DivisionWithRemainder) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-4, 4), deg(0, 5);
  for (int trial = 0; trial < 50; ++trial) {
    QPoly a, b;
    for (int e = deg(rng); e >= 0; --e) a += QPoly::monomial(Rational(c(rng)), e);
    for (int e = deg(rng); e >= 0; --e) b += QPoly::monomial(Rational(c(rng)), e);
    if (b.is_zero()) continue;
    auto [quot, rem] = divide(a, b);
    EXPECT_EQ(quot * b + rem, a);
    EXPECT_TRUE(rem.is_zero() || rem.degree() < b.degree());
    EXPECT_EQ(divide_exact(a * b, b), a);
  }
  EXPECT_THROW(divide_exact(qp("q^2+1"), qp("q+1")), std::domain_error);
  EXPECT_THROW(divide(qp("q"), QPoly()), std::domain_error);
}

TEST(UniPoly, CyclotomicPolynomials) {
  EXPECT_EQ(cyclotomic(1), qp("q-1"));
  EXPECT_EQ(cyclotomic(2), qp("q+1"));
  EXPECT_EQ(cyclotomic(3), qp("q^2+q+1"));
  EXPECT_EQ(cyclotomic(6), qp("q^2-q+1"));
  // q^n - 1 is the product of Phi_d over d | n.
  for (int n = 1; n <= 12; ++n) {
    QPoly prod(1);
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) prod *= cyclotomic(d);
    EXPECT_EQ(prod, QPoly::monomial(Rational(1), n) - QPoly(1)) << n;
  }
}

TEST(MultiPoly, RingAxiomsOnRandomInputs) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    MultiPoly a = random_poly(rng, 3, 4, 2), b = random_poly(rng, 3, 4, 2), c = random_poly(rng, 3, 3, 2);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a - a, MultiPoly());
    EXPECT_EQ(a.pow(2), a * a);
  }
}

TEST(MultiPoly, ParseRoundTrip) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    MultiPoly a = random_poly(rng, 4, 5, 3);
    EXPECT_EQ(parse_multipoly(a.to_string()), a) << a.to_string();
  }
  EXPECT_EQ(parse_multipoly("(x1 - y2)^2"), X(1) * X(1) - X(1) * Y(2) * MultiPoly(2) + Y(2) * Y(2));
  EXPECT_EQ(parse_multipoly("1/2*q x3"), Q() * X(3) * MultiPoly(Rational(Integer(1), Integer(2))));
  EXPECT_THROW(parse_multipoly("x1 +"), std::invalid_argument);
  EXPECT_THROW(parse_multipoly("z1"), std::invalid_argument);
}

TEST(MultiPoly, DividedDifferenceOracle) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    MultiPoly f = random_poly(rng, 4, 5, 3);
    for (int i = 1; i < 4; ++i) {
      MultiPoly d = divided_difference(i, f);
      EXPECT_EQ((X(i) - X(i + 1)) * d, f - swap_x(f, i));
      EXPECT_EQ(divided_difference(i, d), MultiPoly()); // the operator squares to zero
    }
  }
  EXPECT_EQ(divided_difference(1, X(1)), MultiPoly(1));
  EXPECT_EQ(divided_difference(2, Y(2) * Y(2), Bank::Y), Y(2) + Y(3));
}

TEST(MultiPoly, BraidRelationForDividedDifferences) {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly f = random_poly(rng, 3, 5, 3);
    auto d = [](int i, const MultiPoly& g) { return divided_difference(i, g); };
    EXPECT_EQ(d(1, d(2, d(1, f))), d(2, d(1, d(2, f))));
  }
}

TEST(MultiPoly, SubstitutionAndQConversion) {
  MultiPoly f = X(1) * Y(1) + Q();
  EXPECT_EQ(substitute(f, {{yvar(1), X(1)}}, MissingVar::KeepAsIs), X(1) * X(1) + Q());
  EXPECT_THROW(substitute(f, {{yvar(1), X(1)}}), std::invalid_argument);
  QPoly p = qp("q^3-2*q+5");
  EXPECT_EQ(to_qpoly(from_qpoly(p)), p);
  EXPECT_THROW(to_qpoly(X(1)), std::invalid_argument);
}

TEST(MultiPoly, SmallIdentities) {
  EXPECT_EQ((X(1) - Y(1)) * (X(1) + Y(1)), X(1) * X(1) - Y(1) * Y(1));
  MultiPoly p = X(2) * Q() + MultiPoly(3);
  EXPECT_EQ(p + MultiPoly(), p);
  EXPECT_EQ(parse_laurent("x-1") * parse_laurent("x^-1"), parse_laurent("1-x^-1"));
  EXPECT_EQ(substitute(X(1) - Y(1), {{yvar(1), X(1)}}, MissingVar::KeepAsIs), MultiPoly());
  EXPECT_EQ(substitute(X(1) - Y(1), {{yvar(1), Q() * Y(1)}}, MissingVar::KeepAsIs), X(1) - Q() * Y(1));
}

TEST(MultiPoly, SubstitutionComposes) {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 15; ++trial) {
    MultiPoly p = random_poly(rng, 3, 4, 2);
    Substitution sigma{{xvar(1), X(2) + Y(1)}, {xvar(2), X(3) * X(1)}};
    Substitution tau{{xvar(1), X(3) - MultiPoly(1)}, {xvar(3), Q() * X(2)}, {yvar(1), X(1)}};
    // tau after sigma: apply tau to the images of sigma, keep tau elsewhere.
    Substitution composed = tau;
    for (const auto& [v, img] : sigma) composed[v] = substitute(img, tau, MissingVar::KeepAsIs);
    EXPECT_EQ(substitute(substitute(p, sigma, MissingVar::KeepAsIs), tau, MissingVar::KeepAsIs),
              substitute(p, composed, MissingVar::KeepAsIs));
  }
}

TEST(UniPoly, EvaluationBeyondMachineIntegers) {
  // Poincare polynomial of S_10 at q = 10, i.e. prod_{k=1}^{10} (10^k - 1) / 9.
  QPoly p(1);
  for (int k = 1; k <= 10; ++k) {
    QPoly qint;
    for (int e = 0; e < k; ++e) qint += QPoly::monomial(Rational(1), e);
    p *= qint;
  }
  Integer expected = 1;
  for (int k = 1; k <= 10; ++k) {
    Integer t = 1;
    for (int e = 0; e < k; ++e) t *= 10;
    expected *= (t - 1) / 9;
  }
  EXPECT_GT(expected, Integer(std::numeric_limits<std::uint64_t>::max()));
  EXPECT_EQ(p.eval(Rational(10)), Rational(expected));
  EXPECT_EQ(qp("q+1").eval(Rational(1)), Rational(2));
  EXPECT_EQ(qp("q^2+q+1").eval(Rational(2)), Rational(7));
  EXPECT_EQ(parse_laurent("x^-1+1").eval(Rational(2)), Rational(Integer(3), Integer(2)));
}

TEST(UniPoly, LeadingData) {
  auto a = qp("q^2+q").leading_data();
  EXPECT_EQ(a.degree, 2);
  EXPECT_EQ(a.coeff, Rational(1));
  auto b = qp("3*q^5").leading_data();
  EXPECT_EQ(b.degree, 5);
  EXPECT_EQ(b.coeff, Rational(3));
}
