#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "sprimes/poly.hpp"

using namespace sprimes;

namespace {

Poly random_poly(std::mt19937& rng, int nvars, int nterms, int maxdeg) {
  std::uniform_int_distribution<int> coef(-5, 5), pick(1, nvars), deg(0, maxdeg), fam(0, 2);
  Poly p;
  for (int k = 0; k < nterms; ++k) {
    Poly m(coef(rng));
    int d = deg(rng);
    for (int j = 0; j < d; ++j) {
      Family f = static_cast<Family>(fam(rng));
      m = m * var(Variable{f, static_cast<std::uint32_t>(pick(rng))});
    }
    p += m;
  }
  return p;
}

}  // namespace

TEST(Parse, Difference) {
  Poly p = parse("x1 - x2");
  EXPECT_EQ(p, var(xv(1)) - var(xv(2)));
  EXPECT_EQ(p.to_string(), "x1 - x2");
}

TEST(Parse, Circle) {
  Poly p = parse("t1^2 + t2^2 - 1");
  EXPECT_EQ(p, var(tv(1)).pow(2) + var(tv(2)).pow(2) - Poly(1));
  EXPECT_EQ(p.to_string(), "t1^2 + t2^2 - 1");
}

TEST(Parse, CubeExpandsByHand) {
  Poly x1 = var(xv(1)), x2 = var(xv(2));
  Poly hand = x1 * x1 * x1 - Poly(3) * x1 * x1 * x2 + Poly(3) * x1 * x2 * x2 - x2 * x2 * x2;
  EXPECT_EQ(parse("(x1-x2)^3"), hand);
  EXPECT_EQ(parse("(x1-x2)^3").to_string(), "x1^3 - 3*x1^2*x2 + 3*x1*x2^2 - x2^3");
}

TEST(Parse, RationalLiteralsAndUnaryMinus) {
  Poly p = parse("-3/6*x1^2 + 2/4");
  EXPECT_EQ(p.to_string(), "-1/2*x1^2 + 1/2");
  EXPECT_EQ(parse("-x1^2"), -(var(xv(1)).pow(2)));
  EXPECT_EQ(parse("2*(t1 - e3)"), Poly(2) * var(tv(1)) - Poly(2) * var(ev(3)));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse("2x1"), ParseError);
  EXPECT_THROW(parse("x1 x2"), ParseError);
  EXPECT_THROW(parse("(x1)(x2)"), ParseError);
  EXPECT_THROW(parse("y1 + x1"), ParseError);
  EXPECT_THROW(parse("z1"), ParseError);
  EXPECT_THROW(parse("x0"), ParseError);
  EXPECT_THROW(parse("x1 +"), ParseError);
  EXPECT_THROW(parse("(x1"), ParseError);
  EXPECT_THROW(parse("1/0"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
  try {
    parse("x1 + y2");
    FAIL();
  } catch (const ParseError& err) {
    EXPECT_EQ(err.position(), 5u);
    EXPECT_NE(std::string(err.what()).find("unknown variable family"), std::string::npos);
  }
}

TEST(Arith, AdditiveInverse) {
  EXPECT_TRUE((parse("x1 - x2") + parse("x2 - x1")).is_zero());
  EXPECT_EQ((parse("x1 - x2") + parse("x2 - x1")).to_string(), "0");
}

TEST(Arith, SubstituteIntoDifference) {
  std::map<Variable, Poly> img;
  for (std::uint32_t i = 1; i <= 2; ++i) img[xv(i)] = var(tv(1)) + var(ev(i));
  EXPECT_EQ(parse("x1 - x2").substitute(img), parse("e1 - e2"));
}

TEST(Arith, TruncatedSquareLeavesCrossTerm) {
  Poly sq = parse("(e1 - e2)^2");
  Poly kept;
  for (const auto& [m, c] : sq.terms())
    if (m.exponent(ev(1)) < 2 && m.exponent(ev(2)) < 2) kept.add_term(m, c);
  EXPECT_EQ(kept, parse("-2*e1*e2"));
}

TEST(Arith, SubstitutionIsSimultaneous) {
  std::map<Variable, Poly> swap{{tv(1), var(tv(2))}, {tv(2), var(tv(1))}};
  EXPECT_EQ(parse("t1^2*t2").substitute(swap), parse("t1*t2^2"));
}

TEST(Arith, Derivative) {
  EXPECT_EQ(parse("x1^3*x2 + x2").derivative(xv(1)), parse("3*x1^2*x2"));
}

TEST(Discriminant, Small) {
  EXPECT_EQ(discriminant({1}), Poly(1));
  EXPECT_EQ(discriminant({1, 2}), parse("x1 - x2"));
  EXPECT_EQ(discriminant({1, 2, 3}), parse("(x1-x2)*(x1-x3)*(x2-x3)"));
  EXPECT_THROW(discriminant({}), std::invalid_argument);
}

// alternating sum over permutations of x_{s(1)}^{n-1} ... x_{s(n)}^0
TEST(Discriminant, AlternatingSumIdentity) {
  for (std::uint32_t n = 1; n <= 5; ++n) {
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 1u);
    Poly alt;
    do {
      int inversions = 0;
      for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b)
          if (perm[a] > perm[b]) ++inversions;
      Poly m(inversions % 2 ? -1 : 1);
      for (std::uint32_t k = 0; k < n; ++k) m = m * var(xv(perm[k])).pow(n - 1 - k);
      alt += m;
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(discriminant(index_range(1, n)), alt) << "n=" << n;
  }
}

TEST(Printing, GrevlexOrderOfTerms) {
  // same degree: the term with the smaller exponent on the smallest variable comes first
  EXPECT_EQ(parse("x2^2 + x1*x3 + x1^2").to_string(), "x1^2 + x2^2 + x1*x3");
  EXPECT_EQ(parse("e1 + t1 + x1 + 1").to_string(), "x1 + t1 + e1 + 1");
}

TEST(PolyProperties, RingAxiomsAndRoundTrip) {
  std::mt19937 rng(20261016);
  for (int trial = 0; trial < 150; ++trial) {
    Poly a = random_poly(rng, 3, 4, 3), b = random_poly(rng, 3, 4, 3), c = random_poly(rng, 3, 3, 2);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(parse(a.to_string()), a);
    EXPECT_EQ(parse((a * b).to_string()), a * b);
  }
}

TEST(PrimeField, ArithmeticAndPrinting) {
  using P2 = Polynomial<ModP<2>>;
  P2 g = parse<ModP<2>>("(x1 - x2)^2");
  EXPECT_EQ(g, parse<ModP<2>>("x1^2 + x2^2"));
  EXPECT_EQ(g.to_string(), "x1^2 + x2^2");
  EXPECT_EQ(parse<ModP<3>>("1/2*x1").to_string(), "2*x1");
  EXPECT_THROW(parse<ModP<3>>("1/3"), ParseError);
}
