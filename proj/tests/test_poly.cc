#include <gtest/gtest.h>

#include <random>

#include "popcert/errors.h"
#include "popcert/poly.h"
#include "popcert/reductions.h"
#include "test_util.h"

namespace popcert {
namespace {

using testing::C;
using testing::Q;
using testing::V;

TEST(Grlex, OrdersByDegreeThenEarlierExponents) {
  GrlexLess less;
  const std::vector<Monomial> order = {Monomial({0, 0}), Monomial({1, 0}), Monomial({0, 1}),
                                       Monomial({2, 0}), Monomial({1, 1}), Monomial({0, 2})};
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    EXPECT_TRUE(less(order[i], order[i + 1])) << i;
    EXPECT_FALSE(less(order[i + 1], order[i])) << i;
  }
}

TEST(Polynomial, ZeroHasDegreeZeroAndNoTerms) {
  Polynomial z({"x1"});
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.degree(), 0);
  const std::vector<Rational> pt = {Q(7, 3)};
  EXPECT_EQ(z.Evaluate(pt), 0);
}

TEST(Polynomial, ConstructionSumsRepeatsAndDropsZeros) {
  const std::vector<std::pair<Monomial, Rational>> terms = {
      {Monomial({2}), Q(1, 2)}, {Monomial({2}), Q(1, 2)}, {Monomial({1}), Q(3)}, {Monomial({1}), Q(-3)}};
  Polynomial p({"x1"}, terms);
  EXPECT_EQ(p.num_terms(), 1u);
  EXPECT_EQ(p.coefficient(Monomial({2})), 1);
  EXPECT_EQ(p.coefficient(Monomial({1})), 0);
}

TEST(Polynomial, RejectsMalformedTerms) {
  const std::vector<std::pair<Monomial, Rational>> short_exp = {{Monomial({1}), Q(1)}};
  EXPECT_THROW(Polynomial({"x1", "x2"}, short_exp), FormatError);
  const std::vector<std::pair<Monomial, Rational>> negative = {{Monomial({-1}), Q(1)}};
  EXPECT_THROW(Polynomial({"x1"}, negative), FormatError);
  EXPECT_THROW(Polynomial({"x1", "x1"}), FormatError);
}

TEST(Polynomial, EvaluateExamples) {
  const Polynomial p = V("x1").Pow(2) + V("x2").Pow(2);
  const std::vector<Rational> pt = {Q(3, 2), Q(1, 2)};
  EXPECT_EQ(p.Evaluate(pt), Q(5, 2));
  const std::vector<Rational> wrong = {Q(1)};
  EXPECT_THROW(p.Evaluate(wrong), DomainError);
  const Polynomial s = GenSPhi(testing::Phi1());
  const std::vector<Rational> zero = {Q(1), Q(-1), Q(-1)};
  EXPECT_EQ(s.Evaluate(zero), 0);
}

TEST(Polynomial, CombineExamples) {
  EXPECT_TRUE((V("x1") + (-V("x1"))).is_zero());
  EXPECT_EQ((V("x1") + Q(1)) * (V("x1") - Q(1)), V("x1").Pow(2) - Q(1));
  EXPECT_EQ(V("x1") * Q(3, 2), Polynomial::Constant(Q(3, 2)) * V("x1"));
}

TEST(Polynomial, CoercivityProductHasTwelveTerms) {
  const Polynomial g = V("gamma");
  const Polynomial p = V("x1").Pow(4) + V("x2").Pow(2);
  const Polynomial prod = (g - p) * (V("x1").Pow(2) + V("x2").Pow(2) - g.Pow(2) - Q(2));
  // Independent symbolic expansion gives 12 distinct monomials.
  EXPECT_EQ(prod.num_terms(), 12u);
}

TEST(Polynomial, UnionVarsKeepsFirstSeenOrder) {
  const Polynomial p = V("y") + V("x1");
  EXPECT_EQ(p.vars(), (std::vector<std::string>{"y", "x1"}));
  EXPECT_EQ(UnionVars({"a", "b"}, {"c", "a"}), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(Homogenize, Examples) {
  const Polynomial h = Homogenize(V("x1").Pow(2) + Q(1), "x0");
  EXPECT_EQ(h.vars().front(), "x0");
  EXPECT_EQ(h, V("x1").Pow(2) + V("x0").Pow(2));
  EXPECT_TRUE(h.is_homogeneous());

  const Polynomial c = Homogenize(Polynomial::Constant(Q(5), {"x1"}), "x0");
  EXPECT_EQ(c.degree(), 0);
  EXPECT_EQ(c, C(Q(5)));

  EXPECT_THROW(Homogenize(V("x0") + V("x1"), "x0"), DomainError);
}

TEST(Homogenize, SPhiMatchesDisplayedForm) {
  const Polynomial x0 = V("x0");
  const Polynomial x1 = V("x1"), x2 = V("x2"), x3 = V("x3");
  const Polynomial expected = x0.Pow(2) * (x1 + x2 + x3 + x0).Pow(2) +
                              (x0.Pow(2) - x1.Pow(2)).Pow(2) + (x0.Pow(2) - x2.Pow(2)).Pow(2) +
                              (x0.Pow(2) - x3.Pow(2)).Pow(2);
  const Polynomial h = Homogenize(GenSPhi(testing::Phi1()), "x0");
  EXPECT_EQ(h, expected);
  EXPECT_EQ(h.num_terms(), 13u);
}

TEST(Components, Examples) {
  const auto c1 = HomogeneousComponents(V("x1").Pow(4) + V("x2").Pow(2));
  ASSERT_EQ(c1.size(), 2u);
  EXPECT_EQ(c1[0].first, 2);
  EXPECT_EQ(c1[0].second, V("x2").Pow(2));
  EXPECT_EQ(c1[1].first, 4);
  EXPECT_EQ(c1[1].second, V("x1").Pow(4));

  const auto c2 = HomogeneousComponents(Q(1) - V("x1").Pow(2));
  ASSERT_EQ(c2.size(), 2u);
  EXPECT_EQ(c2[0].first, 0);
  EXPECT_EQ(c2[0].second, C(Q(1)));
  EXPECT_EQ(c2[1].second, -V("x1").Pow(2));
}

TEST(Components, QuarticExampleMatchesOracle) {
  const Polynomial x1 = V("x1"), x2 = V("x2");
  const auto comps = HomogeneousComponents((x1 - x2).Pow(4) + (x1 + x2).Pow(2) - Q(1));
  ASSERT_EQ(comps.size(), 3u);
  EXPECT_EQ(comps[0].first, 0);
  EXPECT_EQ(comps[1].first, 2);
  EXPECT_EQ(comps[2].first, 4);
  // Oracle: degree 2 -> x1^2 + 2 x1 x2 + x2^2; degree 4 -> 1, -4, 6, -4, 1.
  const std::vector<Rational> quartic = {1, -4, 6, -4, 1};
  for (int a = 0; a <= 4; ++a) {
    EXPECT_EQ(comps[2].second.coefficient(Monomial({4 - a, a})), quartic[a]) << a;
  }
  EXPECT_EQ(comps[1].second.coefficient(Monomial({1, 1})), 2);
  EXPECT_EQ(comps[0].second.coefficient(Monomial({0, 0})), -1);
}

TEST(PolyText, ParsesExamples) {
  const Polynomial a = ParsePoly(R"({"vars":["x1"],"terms":[{"c":"1/1","e":[2]}]})");
  EXPECT_EQ(a, V("x1").Pow(2));
  const Polynomial b =
      ParsePoly(R"({"vars":["x1","x2"],"terms":[{"c":"2/3","e":[4,0]},{"c":"-1/1","e":[0,0]}]})");
  EXPECT_EQ(b, Q(2, 3) * V("x1").Pow(4) - Q(1));
  const Polynomial c =
      ParsePoly(R"({"vars":["x1"],"terms":[{"c":"1/2","e":[1]},{"c":"1/3","e":[1]}]})");
  EXPECT_EQ(c.num_terms(), 1u);
  EXPECT_EQ(c.coefficient(Monomial({1})), Q(5, 6));
}

TEST(PolyText, Errors) {
  try {
    ParsePoly(R"({"vars":["x1"],"terms":[)");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_GT(e.position(), 0u);
  }
  EXPECT_THROW(ParsePoly(R"({"vars":["x1"],"terms":[{"c":"1/1","e":[1,2]}]})"), FormatError);
  EXPECT_THROW(ParsePoly(R"({"vars":["x1"],"terms":[{"c":"1/0","e":[1]}]})"), FormatError);
  EXPECT_THROW(ParsePoly(R"({"vars":["x1"],"terms":[{"c":1,"e":[1]}]})"), FormatError);
}

TEST(PolyText, CanonicalRoundTrip) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> vars = {"x1", "x2", "x3"};
  for (int i = 0; i < 50; ++i) {
    const Polynomial p = testing::RandomPoly(rng, vars, 4) * testing::Q(1, 3);
    const std::string text = SerializePoly(p);
    const Polynomial back = ParsePoly(text);
    EXPECT_EQ(back, p);
    EXPECT_EQ(SerializePoly(back), text);
  }
}

class PolyProperties : public ::testing::TestWithParam<int> {};

TEST_P(PolyProperties, RingLawsHoldExactly) {
  std::mt19937_64 rng(GetParam());
  std::uniform_int_distribution<int> nv(1, 4);
  std::vector<std::string> vars;
  for (int i = 1, n = nv(rng); i <= n; ++i) vars.push_back(XName(i));
  const Polynomial p = testing::RandomPoly(rng, vars, 4);
  const Polynomial q = testing::RandomPoly(rng, vars, 4);
  const Polynomial r = testing::RandomPoly(rng, vars, 4);
  EXPECT_EQ(((p + q) + r).terms(), (p + (q + r)).terms());
  EXPECT_EQ((p * q).terms(), (q * p).terms());
  EXPECT_EQ((p * (q + r)).terms(), (p * q + p * r).terms());
}

TEST_P(PolyProperties, HomogenizeAndComponents) {
  std::mt19937_64 rng(1000 + GetParam());
  std::vector<std::string> vars = {"x1", "x2", "x3"};
  const Polynomial p = testing::RandomPoly(rng, vars, 4);
  const Polynomial h = Homogenize(p, "x0");
  EXPECT_TRUE(h.is_homogeneous());
  EXPECT_EQ(h.Substitute("x0", 1), p);

  Polynomial sum(vars);
  for (const auto& [deg, g] : HomogeneousComponents(p)) {
    EXPECT_TRUE(g.is_homogeneous());
    EXPECT_EQ(g.degree(), deg);
    sum += g;
  }
  EXPECT_EQ(sum.terms(), p.terms());

  const Rational t = testing::RandomRational(rng);
  std::vector<Rational> x, tx = {t};
  for (std::size_t i = 0; i < vars.size(); ++i) {
    x.push_back(testing::RandomRational(rng));
    tx.push_back(t * x.back());
  }
  EXPECT_EQ(h.Evaluate(tx), Pow(t, p.degree()) * p.Evaluate(x));
}

INSTANTIATE_TEST_SUITE_P(Seeds, PolyProperties, ::testing::Range(0, 40));

}  // namespace
}  // namespace popcert
