#include <gtest/gtest.h>

#include "cubaut/ideal.hpp"
#include "test_support.hpp"

using namespace cubaut;
using cubaut::testkit::kCases;
using cubaut::testkit::kSeed;

namespace {

MultiPoly p(const std::string& s, int n = 5, int cond = 1) { return parse_poly(s, {n, cond}); }

const char* kSegre = "x0^3 + x1^3 + x2^3 + x3^3 + x4^3 - (x0 + x1 + x2 + x3 + x4)^3";
const char* kJ5a =
    "x0*x1*x2 + x0*x1*x3 + x0*x1*x4 + x0*x2*x3 + x0*x2*x4 + x0*x3*x4 + x1*x2*x3 + x1*x2*x4"
    " + x1*x3*x4 + x2*x3*x4";
// x0 x1 x2 - x3 x4 x5 with x5 = -(x0 + ... + x4).
const char* kJ14 = "x0*x1*x2 + x3*x4*(x0 + x1 + x2 + x3 + x4)";

Ideal jacobian(const MultiPoly& f) { return gradient(f); }

// Forms of degree d vanishing on the points: nullspace of the evaluation map.
std::vector<MultiPoly> vanishing_forms(const std::vector<Vec>& pts, int n, int d) {
  std::vector<Monomial> mons;
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      e[static_cast<std::size_t>(i)] = left;
      mons.push_back(Monomial::from_exponents(e));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[static_cast<std::size_t>(i)] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, d);
  Matrix ev(static_cast<int>(pts.size()), static_cast<int>(mons.size()));
  for (std::size_t r = 0; r < pts.size(); ++r)
    for (std::size_t c = 0; c < mons.size(); ++c)
      ev(static_cast<int>(r), static_cast<int>(c)) = evaluate(MultiPoly::monomial(n, mons[c], 1), pts[r]);
  std::vector<MultiPoly> out;
  for (const auto& v : ev.nullspace()) {
    std::vector<MultiPoly::Term> t;
    for (std::size_t c = 0; c < mons.size(); ++c) t.emplace_back(mons[c], v[c]);
    out.push_back(MultiPoly::from_terms(n, t));
  }
  return out;
}

std::vector<Vec> segre_nodes() {
  // Permutations of (1,1,1,-1,-1,-1) in P^5, dropping x5.
  std::vector<Vec> out;
  for (int mask = 0; mask < 64; ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != 3 || !(mask & 1)) continue;
    Vec v;
    for (int i = 0; i < 5; ++i) v.push_back(mask & (1 << i) ? 1 : -1);
    out.push_back(v);
  }
  return out;
}

std::vector<Vec> j14_nodes() {
  std::vector<Vec> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 5; ++j) {
      Vec v(5, FieldElement(0));
      v[static_cast<std::size_t>(i)] = 1;
      v[static_cast<std::size_t>(j)] = -1;
      out.push_back(v);
    }
  for (int i = 0; i < 3; ++i) {
    Vec v(5, FieldElement(0));
    v[static_cast<std::size_t>(i)] = 1;
    out.push_back(v);
  }
  return out;
}

TEST(Groebner, AlreadyReduced) {
  const auto g = groebner({p("x0", 2), p("x1", 2)});
  ASSERT_EQ(g.elements.size(), 2u);
  EXPECT_EQ(g.elements[0], p("x1", 2));
  EXPECT_EQ(g.elements[1], p("x0", 2));
}

TEST(Groebner, UnitIdeal) { EXPECT_TRUE(groebner({p("x0*x1 - 1", 2), p("x0^2", 2)}).is_unit()); }

TEST(Groebner, BudgetExceeded) {
  GroebnerOptions tiny;
  tiny.budget = 1;
  EXPECT_THROW(groebner(jacobian(p(kSegre)), tiny), BudgetExceeded);
}

TEST(Groebner, J5aJacobianZeroDimensional) {
  const auto g = groebner(jacobian(p(kJ5a)));
  EXPECT_FALSE(failing_s_pair(g).has_value());
  const auto dd = proj_dim_degree(g);
  EXPECT_EQ(dd.dimension, 0);
  EXPECT_EQ(dd.degree, 5);
}

TEST(NormalForm, Examples) {
  const MultiPoly f = p(kJ5a);
  const auto g = groebner(jacobian(f));
  EXPECT_TRUE(normal_form(f.scaled(FieldElement(3)), g).is_zero());
  const auto xy = groebner({p("x0", 2), p("x1", 2)});
  EXPECT_EQ(normal_form(p("1", 2), xy), p("1", 2));
  EXPECT_TRUE(normal_form(p("x0^2", 2), groebner({p("x0", 2)})).is_zero());
}

TEST(RadicalMember, Examples) {
  EXPECT_TRUE(radical_member(p("x0", 2), {p("x0^2", 2)}));
  EXPECT_FALSE(radical_member(p("x1", 2), {p("x0", 2)}));
}

TEST(RadicalMember, J14NodesAreTheWholeLocus) {
  const MultiPoly f = p(kJ14);
  const auto jac = jacobian(f);
  const auto nodes = j14_nodes();
  // Oracle: every listed point is singular and the locus is 0-dimensional.
  for (const auto& v : nodes)
    for (const auto& q : jac) EXPECT_TRUE(evaluate(q, v).is_zero());
  EXPECT_EQ(proj_dim_degree(jac).dimension, 0);
  const auto cubics = vanishing_forms(nodes, 5, 3);
  ASSERT_FALSE(cubics.empty());
  for (const auto& c : cubics) EXPECT_TRUE(radical_member(c, jac));
  // A cubic missing one node is not in the radical.
  std::vector<Vec> eight(nodes.begin(), nodes.end() - 1);
  bool found_non_member = false;
  for (const auto& c : vanishing_forms(eight, 5, 3))
    if (!evaluate(c, nodes.back()).is_zero()) {
      EXPECT_FALSE(radical_member(c, jac));
      found_non_member = true;
      break;
    }
  EXPECT_TRUE(found_non_member);
}

TEST(ProjDimDegree, Examples) {
  EXPECT_EQ(proj_dim_degree({p("x0"), p("x1"), p("x2"), p("x3"), p("x4")}).dimension, -1);
  const auto q = proj_dim_degree({p("x0^2 + x1^2 + x2^2 + x3^2 + x4^2")});
  EXPECT_EQ(q.dimension, 3);
  EXPECT_EQ(q.degree, 2);
  EXPECT_THROW(proj_dim_degree({p("x0^2 + x1")}), std::invalid_argument);
}

TEST(ProjDimDegree, SegreTenReducedPoints) {
  const auto jac = jacobian(p(kSegre));
  const auto dd = proj_dim_degree(jac);
  EXPECT_EQ(dd.dimension, 0);
  EXPECT_EQ(dd.degree, 10);
  const auto nodes = segre_nodes();
  ASSERT_EQ(nodes.size(), 10u);
  for (const auto& v : nodes)
    for (const auto& q : jac) EXPECT_TRUE(evaluate(q, v).is_zero());
  for (const auto& c : vanishing_forms(nodes, 5, 3)) EXPECT_TRUE(radical_member(c, jac));
}

TEST(HilbertNumerator, SmallCases) {
  // k[x,y]/<x^2, xy>: numerator 1 - 2t^2 + t^3.
  const auto n = hilbert_numerator({Monomial::var(0, 2), Monomial::var(0) * Monomial::var(1)});
  EXPECT_EQ(n, (std::vector<long long>{1, 0, -2, 1}));
}

TEST(LocalMultiplicity, Examples) {
  EXPECT_EQ(local_multiplicity(gradient(p("x0^2 + x1^2 + x2^2 + x3^2", 4)), {0, 0, 0, 0}), 1);
  EXPECT_EQ(local_multiplicity(gradient(p("x0^2 + x1^2 + x2^2 + x3^3", 4)), {0, 0, 0, 0}), 2);
  EXPECT_THROW(local_multiplicity(gradient(p("x0^2 + x1^2", 4)), {0, 0, 0, 0}), NonIsolatedPoint);
}

TEST(LocalMultiplicity, J9aChartNodes) {
  // Sum x_i x_{i+1} x_{i+2} - sum x_i x_{i+1} x_{i+3} in the chart x0 = 1, node at e0.
  const MultiPoly f = p("x0*x1*x2 + x1*x2*x3 + x2*x3*x4 + x3*x4*x0 + x4*x0*x1"
                        " - x0*x1*x3 - x1*x2*x4 - x2*x3*x0 - x3*x4*x1 - x4*x0*x2");
  std::vector<MultiPoly> images{p("1", 4), p("x0", 4), p("x1", 4), p("x2", 4), p("x3", 4)};
  const MultiPoly chart = substitute_vars(f, images);
  EXPECT_EQ(local_multiplicity(gradient(chart), {0, 0, 0, 0}), 1);
  // Node (1:1:1:1:1).
  EXPECT_EQ(local_multiplicity(gradient(chart), {1, 1, 1, 1}), 1);
}

TEST(SaturatedEqual, Examples) {
  const Ideal i{p("x0*x1 - x2", 3)};
  EXPECT_TRUE(saturated_equal(i, i, p("x0", 3)));
  EXPECT_TRUE(saturated_equal({p("x0*x1", 2)}, {p("x1", 2)}, p("x0", 2)));
  EXPECT_FALSE(saturated_equal({p("x0*x1", 2)}, {p("x1", 2)}, p("1", 2)));
}

TEST(SaturationMember, Examples) {
  EXPECT_TRUE(saturation_member(p("x0", 2), {p("x0*x1^2", 2)}, p("x1", 2)));
  EXPECT_FALSE(saturation_member(p("x0", 2), {p("x0*x1^2", 2)}, p("x0 + 1", 2)));
  EXPECT_TRUE(saturation_member(p("1", 2), {p("x0*x1 - 1", 2), p("x0", 2)}, p("1", 2)));
  EXPECT_FALSE(saturation_member(p("x0", 2), {p("x0^2", 2)}, p("x1", 2)));
}

TEST(SaturatedIdealsDiffer, ExactNotRadical) {
  // Same radical, different ideals.
  EXPECT_TRUE(saturated_equal({p("x0^2", 2)}, {p("x0", 2)}, p("x1", 2)));
  const auto d = saturated_ideals_differ({p("x0^2", 2)}, {p("x0", 2)}, p("x1", 2));
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(*d, p("x0", 2));
  EXPECT_FALSE(saturated_ideals_differ({p("x0*x1", 2)}, {p("x0", 2)}, p("x1", 2)).has_value());
  EXPECT_FALSE(saturated_ideals_differ({p("x0^2*x1^3", 2), p("x0 - x1^2", 2)}, {p("x0^2", 2), p("x0 - x1^2", 2)}, p("x1", 2))
                   .has_value());
}

TEST(IdealProperty, SaturationRecoversCancelledFactor) {
  std::mt19937_64 rng(kSeed);
  for (int k = 0; k < kCases; ++k) {
    // g * s^e generates; g is in the saturation, and g + 1 is not unless s is a unit there.
    MultiPoly g(3), s(3);
    for (int v = 0; v < 3; ++v) {
      g += MultiPoly::variable(3, v).scaled(FieldElement(testkit::random_rational(rng, 4)));
      s += MultiPoly::variable(3, v).scaled(FieldElement(testkit::random_rational(rng, 4)));
    }
    g += MultiPoly::constant(3, FieldElement(testkit::random_rational(rng, 4)));
    s += MultiPoly::constant(3, FieldElement(1 + static_cast<int>(rng() % 4)));
    if (g.is_zero() || g.is_constant()) continue;
    if (saturation_member(MultiPoly::constant(3, FieldElement(1)), {g}, s)) continue;  // g divides a power of s
    const int e = 1 + static_cast<int>(rng() % 3);
    const Ideal i{g * s.pow(e)};
    EXPECT_TRUE(saturation_member(g, i, s)) << g.to_string();
    EXPECT_FALSE(saturation_member(g + MultiPoly::constant(3, FieldElement(1)), i, s)) << g.to_string();
    EXPECT_FALSE(saturated_ideals_differ(i, {g}, s).has_value());
  }
}

TEST(UnivariateEliminant, Points) {
  // Points (1,2) and (3,2): x0 satisfies (t-1)(t-3).
  const auto g = groebner({p("(x0 - 1)*(x0 - 3)", 2), p("x1 - 2", 2)});
  EXPECT_EQ(univariate_eliminant(g, 0), (std::vector<FieldElement>{3, -4, 1}));
  EXPECT_EQ(univariate_eliminant(g, 1), (std::vector<FieldElement>{-2, 1}));
}

// -- properties ---------------------------------------------------------------

MultiPoly random_sparse(std::mt19937_64& rng, int n, int deg, int terms) {
  std::uniform_int_distribution<int> var(0, n - 1);
  std::vector<MultiPoly::Term> t;
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    for (int d = 0; d < deg; ++d) m = m * Monomial::var(var(rng));
    t.emplace_back(m, testkit::random_nonzero(rng, 1));
  }
  return MultiPoly::from_terms(n, t);
}

TEST(IdealProperty, SPolynomialsReduceToZero) {
  std::mt19937_64 rng(kSeed + 31);
  int emitted = 0;
  GroebnerOptions opts;
  opts.on_basis = [&](const GroebnerBasis& g) {
    ++emitted;
    EXPECT_FALSE(failing_s_pair(g).has_value());
  };
  for (int k = 0; k < kCases; ++k) {
    Ideal gens;
    for (int j = 0; j < 3; ++j) gens.push_back(random_sparse(rng, 4, 2, 3));
    groebner(gens, opts);
  }
  EXPECT_EQ(emitted, kCases);
}

TEST(IdealProperty, NormalFormIsIdempotent) {
  std::mt19937_64 rng(kSeed + 37);
  for (int k = 0; k < kCases; ++k) {
    Ideal gens;
    for (int j = 0; j < 3; ++j) gens.push_back(random_sparse(rng, 4, 2, 3));
    const auto g = groebner(gens);
    const MultiPoly f = random_sparse(rng, 4, 3, 5);
    const MultiPoly r = normal_form(f, g);
    EXPECT_TRUE(normal_form(f - r, g).is_zero());
    EXPECT_EQ(normal_form(r, g), r);
  }
}

TEST(IdealProperty, LinearFormsDropDimension) {
  std::mt19937_64 rng(kSeed + 41);
  for (int k = 0; k < kCases; ++k) {
    const int d = 1 + k % 4;
    Ideal gens;
    for (int j = 0; j < d; ++j) gens.push_back(random_sparse(rng, 5, 1, 5));
    int rank = rank_of([&] {
      std::vector<Vec> rows;
      for (const auto& f : gens) {
        Vec v;
        for (int i = 0; i < 5; ++i) v.push_back(f.coeff(Monomial::var(i)));
        rows.push_back(v);
      }
      return rows;
    }());
    const auto dd = proj_dim_degree(gens);
    EXPECT_EQ(dd.dimension, 4 - rank);
    EXPECT_EQ(dd.degree, 1);
  }
}

TEST(IdealProperty, LocalMultiplicityCoordinateInvariant) {
  std::mt19937_64 rng(kSeed + 43);
  const std::vector<std::string> models{"x0^2 + x1^2 + x2^2 + x3^2", "x0^2 + x1^2 + x2^2 + x3^3",
                                        "x0*x1 + x2^2 + x3^4", "x0^2 + x1^2 + x2*x3 + x3^3 + x2^3"};
  const std::vector<int> expected{1, 2, 3, 1};
  for (int k = 0; k < kCases; ++k) {
    const std::size_t which = static_cast<std::size_t>(k) % models.size();
    const MultiPoly f = p(models[which], 4);
    const Matrix a = testkit::random_invertible(rng, 4);
    Vec pt;
    for (int i = 0; i < 4; ++i) pt.push_back(testkit::random_element(rng, 1));
    // g(y) = f(A (y - pt)): singular at pt with the same local algebra.
    const MultiPoly g = translate(substitute_linear(f, a), [&] {
      Vec v;
      for (const auto& c : pt) v.push_back(-c);
      return v;
    }());
    EXPECT_EQ(local_multiplicity(gradient(g), pt), expected[which]) << models[which];
  }
}

}  // namespace
