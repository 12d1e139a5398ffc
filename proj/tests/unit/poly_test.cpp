#include <gtest/gtest.h>

#include "cubaut/poly.hpp"
#include "test_support.hpp"

using namespace cubaut;
using cubaut::testkit::kCases;
using cubaut::testkit::kSeed;

namespace {

const char* kJ9b =
    "x0*x1*x2 - x0*x1*x3 + x0*x1*x4 + x0*x2*x3 - 3*x0*x2*x4 + x0*x3*x4 - x1*x2*x3"
    " + x1*x2*x4 - x1*x3*x4 + x2*x3*x4";

MultiPoly p5(const std::string& s, int conductor = 1) { return parse_poly(s, {5, conductor}); }
MultiPoly p6(const std::string& s) { return parse_poly(s, {6, 1}); }

MultiPoly segre_p5() {
  return p6("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 - (x0 + x1 + x2 + x3 + x4)^3");
}

MultiPoly j5a() {
  return p5("x0*x1*x2 + x0*x1*x3 + x0*x1*x4 + x0*x2*x3 + x0*x2*x4 + x0*x3*x4 + x1*x2*x3 + x1*x2*x4"
            " + x1*x3*x4 + x2*x3*x4");
}

TEST(Parse, TwoTermCubic) {
  const MultiPoly f = p6("x0*x1*x2 - x3*x4*x5");
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(f.nvars(), 6);
  EXPECT_TRUE(f.is_homogeneous());
  EXPECT_EQ(f.total_degree(), 3);
}

TEST(Parse, CubeRootRelation) { EXPECT_TRUE(parse_poly("w^2 + w + 1", {5, 3}).is_zero()); }

TEST(Parse, J9bDisplay) {
  const MultiPoly f = p5(kJ9b);
  EXPECT_EQ(f.size(), 10u);
  EXPECT_EQ(f.coeff(Monomial::from_exponents({1, 0, 1, 0, 1})), FieldElement(-3));
  for (const auto& [m, c] : f.terms()) EXPECT_TRUE(c == FieldElement(1) || c == FieldElement(-1) || c == FieldElement(-3));
}

TEST(Parse, Errors) {
  try {
    p5("x0 + * x1");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind, ParseError::Kind::Syntax);
    EXPECT_EQ(e.position, 5u);
  }
  try {
    p5("x0 + x7");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind, ParseError::Kind::UnknownVariable);
  }
  try {
    p5("w*x0");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind, ParseError::Kind::WrongField);
  }
  EXPECT_THROW(p5("x0 x1"), ParseError);
  EXPECT_THROW(p5("(x0 + x1"), ParseError);
  EXPECT_THROW(p5("x0^"), ParseError);
  EXPECT_THROW(p5("1/0"), ParseError);
}

TEST(Parse, FractionsAndLiterals) {
  EXPECT_EQ(parse_scalar("1/2 + 1/3"), FieldElement(5, 6));
  EXPECT_EQ(parse_scalar("i^2"), FieldElement(-1));
  EXPECT_EQ(parse_scalar("z5^5"), FieldElement(1));
  EXPECT_EQ(required_conductor("x0 + w*x1 + i*x2"), 12);
  EXPECT_EQ(required_conductor("x0*x1"), 1);
}

TEST(Print, RoundTrip) {
  const MultiPoly f = p5(kJ9b);
  EXPECT_EQ(p5(f.to_string()), f);
  const MultiPoly g = p5("(1 + 2*w)*x0^2*x1 - w*x3^3 + 1/2*x4^3", 3);
  EXPECT_EQ(p5(g.to_string(), 3), g);
}

TEST(SubstituteLinear, Identity) {
  const MultiPoly f = p5(kJ9b);
  EXPECT_EQ(substitute_linear(f, Matrix::identity(5)), f);
  EXPECT_THROW(substitute_linear(f, Matrix::identity(4)), DimensionMismatch);
}

TEST(SubstituteLinear, Permutation) {
  // Swapping x0 and x1 preserves the Segre form.
  const MultiPoly f = segre_p5().with_nvars(5);
  const MultiPoly g = parse_poly("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 - (x0 + x1 + x2 + x3 + x4)^3", {5, 1});
  Matrix swap(5, 5);
  swap(0, 1) = swap(1, 0) = swap(2, 2) = swap(3, 3) = swap(4, 4) = 1;
  const auto lambda = proportionality(g, substitute_linear(g, swap));
  ASSERT_TRUE(lambda.has_value());
  EXPECT_EQ(*lambda, FieldElement(1));
}

TEST(SubstituteLinear, ElevenNodeImageCoefficient) {
  // x1 x2 x3 + x4 x0 (x0 - x1 - x2 - x3) + x4^2 (c1 x1 + c2 x2 + c3 x3) + d x4^3
  // with parameters c1, c2, c3, d, under
  // (x0:...:x4) -> (x1 + x4 - x0 : x1 : x4 - x2 : x4 - x3 : x4).
  const int np = 4;
  auto par = [&](int k) { return MultiPoly::variable(np, k); };
  auto one = MultiPoly::constant(np, FieldElement(1));
  auto mono = [](std::vector<int> e) { return Monomial::from_exponents(e); };
  std::vector<ParamPoly::Term> t = {
      {mono({0, 1, 1, 1, 0}), one},      {mono({2, 0, 0, 0, 1}), one},      {mono({1, 1, 0, 0, 1}), -one},
      {mono({1, 0, 1, 0, 1}), -one},     {mono({1, 0, 0, 1, 1}), -one},     {mono({0, 1, 0, 0, 2}), par(0)},
      {mono({0, 0, 1, 0, 2}), par(1)},   {mono({0, 0, 0, 1, 2}), par(2)},   {mono({0, 0, 0, 0, 3}), par(3)},
  };
  const ParamPoly f = ParamPoly::from_terms(5, t);
  const Matrix s = Matrix::from_rows({{-1, 1, 0, 0, 1}, {0, 1, 0, 0, 0}, {0, 0, -1, 0, 1}, {0, 0, 0, -1, 1}, {0, 0, 0, 0, 1}});
  const ParamPoly g = substitute_linear(f, s);
  const MultiPoly expected = par(3) + par(1) + par(2) - one;
  EXPECT_EQ(g.coeff(mono({0, 0, 0, 0, 3})), expected);
}

TEST(Gradient, Examples) {
  const auto g = gradient(p5("x0^3"));
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g[0], p5("3*x0^2"));
  for (int i = 1; i < 5; ++i) EXPECT_TRUE(g[static_cast<std::size_t>(i)].is_zero());
  for (const auto& q : gradient(p5("7"))) EXPECT_TRUE(q.is_zero());
}

TEST(Gradient, SegreNodeVanishes) {
  const MultiPoly f = segre_p5().with_nvars(5);
  const auto g = gradient(parse_poly("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 - (x0 + x1 + x2 + x3 + x4)^3", {5, 1}));
  (void)f;
  ASSERT_EQ(g.size(), 5u);
  const Vec node{1, 1, 1, -1, -1};
  for (const auto& q : g) {
    EXPECT_EQ(q.total_degree(), 2);
    EXPECT_TRUE(evaluate(q, node).is_zero());
  }
}

TEST(Proportionality, Examples) {
  const MultiPoly f = j5a();
  EXPECT_EQ(proportionality(f, f.scaled(FieldElement(3))), FieldElement(3));
  EXPECT_FALSE(proportionality(f, f + p5("x0^3")).has_value());
  EXPECT_EQ(proportionality(MultiPoly(5), MultiPoly(5)), FieldElement(1));
  EXPECT_FALSE(proportionality(MultiPoly(5), f).has_value());
  EXPECT_EQ(proportionality(f, MultiPoly(5)), FieldElement(0));
}

TEST(Evaluate, Examples) {
  EXPECT_TRUE(evaluate(p6("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 + x5^3"), {1, 1, 1, -1, -1, -1}).is_zero());
  // Sum of x_i x_j x_k at (1,1,1,1,2): four triples without x4 give 1, six with x4 give 2.
  EXPECT_EQ(evaluate(j5a(), {1, 1, 1, 1, 2}), FieldElement(16));
  EXPECT_TRUE(evaluate(p5(kJ9b), {0, 0, 0, 0, 0}).is_zero());
}

TEST(CoefficientConditions, SelfIsTrivial) {
  const MultiPoly f = p5(kJ9b);
  EXPECT_TRUE(coefficient_conditions(f, f).empty());
  EXPECT_FALSE(coefficient_conditions(f, f + p5("x0^3")).empty());
}

TEST(EliminateVariable, SegreMatchesDirectForm) {
  const MultiPoly six = p6("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 + x5^3");
  const MultiPoly five = eliminate_variable(six, {1, 1, 1, 1, 1, 1}, 5);
  EXPECT_EQ(five, parse_poly("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 - (x0 + x1 + x2 + x3 + x4)^3", {5, 1}));
}

// -- properties ---------------------------------------------------------------

TEST(PolyProperty, SubstitutionFunctoriality) {
  std::mt19937_64 rng(kSeed + 11);
  for (int k = 0; k < kCases; ++k) {
    const int cond = k % 2 ? 3 : 1;
    const MultiPoly f = testkit::random_cubic(rng, 5, cond);
    const Matrix s = testkit::random_invertible(rng, 5, cond);
    const Matrix t = testkit::random_invertible(rng, 5, 1);
    // f(S x) composed with T: (f o S) o T = f o (S T).
    EXPECT_EQ(substitute_linear(substitute_linear(f, s), t), substitute_linear(f, s * t));
  }
}

TEST(PolyProperty, GradientLinearAndLeibniz) {
  std::mt19937_64 rng(kSeed + 13);
  for (int k = 0; k < kCases; ++k) {
    const MultiPoly f = testkit::random_cubic(rng, 5, 1, 5);
    const MultiPoly g = testkit::random_cubic(rng, 5, 1, 5);
    const FieldElement c = testkit::random_element(rng, 1);
    const auto gf = gradient(f), gg = gradient(g), gs = gradient(f.scaled(c) + g), gp = gradient(f * g);
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_EQ(gs[i], gf[i].scaled(c) + gg[i]);
      EXPECT_EQ(gp[i], gf[i] * g + f * gg[i]);
    }
  }
}

TEST(PolyProperty, EulerIdentity) {
  std::mt19937_64 rng(kSeed + 17);
  for (int k = 0; k < kCases; ++k) {
    const MultiPoly f = testkit::random_cubic(rng, 5, k % 2 ? 5 : 1);
    const auto g = gradient(f);
    MultiPoly s(5);
    for (int i = 0; i < 5; ++i) s += MultiPoly::variable(5, i) * g[static_cast<std::size_t>(i)];
    EXPECT_EQ(s, f.scaled(FieldElement(3)));
  }
}

TEST(PolyProperty, ProportionalityMatchesConditions) {
  std::mt19937_64 rng(kSeed + 19);
  for (int k = 0; k < kCases; ++k) {
    const MultiPoly f = testkit::random_cubic(rng, 5, 1, 4);
    MultiPoly g = f.scaled(testkit::random_nonzero(rng, 1));
    if (k % 2) g += testkit::random_cubic(rng, 5, 1, 1);
    const bool prop = proportionality(f, g).has_value();
    const bool conds = coefficient_conditions(f, g).empty();
    EXPECT_EQ(prop, conds && !g.is_zero()) << f.to_string() << " vs " << g.to_string();
  }
}

TEST(PolyProperty, ParseRoundTrip) {
  std::mt19937_64 rng(kSeed + 23);
  for (int k = 0; k < kCases; ++k) {
    const int cond = std::vector<int>{1, 3, 4, 5}[static_cast<std::size_t>(k % 4)];
    const MultiPoly f = testkit::random_cubic(rng, 5, cond);
    EXPECT_EQ(parse_poly(f.to_string(), {5, cond}), f);
  }
}

}  // namespace
