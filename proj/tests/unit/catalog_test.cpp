#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "cubaut/catalog.hpp"
#include "cubaut/singularity.hpp"
#include "test_support.hpp"

using namespace cubaut;
using cubaut::testkit::kCases;
using cubaut::testkit::kSeed;

namespace {

MultiPoly p(const std::string& s, int n = 5, int cond = 1) { return parse_poly(s, {n, cond}); }

Vec ones(int n) { return Vec(static_cast<std::size_t>(n), FieldElement(1)); }

Perm random_perm(std::mt19937_64& rng, int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return Perm(v);
}

bool proportional(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  const FieldElement r = b.lc() / a.lc();
  return (a.scaled(r) - b).is_zero();
}

bool singular_at(const MultiPoly& f, const ProjPoint& q) {
  for (const auto& g : gradient(f))
    if (!evaluate(g, q.coords()).is_zero()) return false;
  return true;
}

Vec random_params(std::mt19937_64& rng, std::size_t n) {
  Vec v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(testkit::random_nonzero(rng, 1));
  return v;
}

}  // namespace

TEST(Catalog, Tags) {
  EXPECT_EQ(table_tags().size(), 6u);
  EXPECT_EQ(catalog_tags().size(), 9u);
  EXPECT_THROW(catalog_build("J99"), UnknownTag);
  for (const auto& t : catalog_tags()) EXPECT_EQ(catalog_build(t).tag, t);
}

TEST(HyperplaneRestrict, Examples) {
  // x5 = -(x0 + ... + x4).
  EXPECT_EQ(hyperplane_restrict(p("x0*x1*x2 - x3*x4*x5", 6), ones(6)), p("x0*x1*x2 + x3*x4*(x0 + x1 + x2 + x3 + x4)"));
  EXPECT_EQ(hyperplane_restrict(p("x5^3", 6), ones(6)), p("-(x0 + x1 + x2 + x3 + x4)^3"));
  Vec rel{FieldElement(1), FieldElement(0), FieldElement(0), FieldElement(0), FieldElement(0), FieldElement(2)};
  EXPECT_EQ(hyperplane_restrict(p("x5*x1^2", 6), rel), p("-1/2*x0*x1^2"));
}

TEST(Catalog, FormsAreCubicsSatisfyingEuler) {
  for (const auto& t : table_tags()) {
    const CatalogEntry e = catalog_build(t);
    ASSERT_EQ(e.form.nvars(), 5) << t;
    ASSERT_TRUE(e.form.is_homogeneous()) << t;
    EXPECT_EQ(e.form.total_degree(), 3) << t;
    const auto grad = gradient(e.form);
    MultiPoly euler(5);
    for (int i = 0; i < 5; ++i) euler += MultiPoly::variable(5, i) * grad[static_cast<std::size_t>(i)];
    EXPECT_EQ(euler, e.form.scaled(FieldElement(3))) << t;
  }
}

TEST(Catalog, SeedsAreSingularAndPlanesLie) {
  for (const auto& t : table_tags()) {
    const CatalogEntry e = catalog_build(t);
    EXPECT_EQ(static_cast<int>(e.seed_points.size()), e.s) << t;
    for (const auto& q : e.seed_points) EXPECT_TRUE(singular_at(e.form, q)) << t << " " << q.to_string();
    for (const auto& pl : e.seed_planes) EXPECT_TRUE(plane_contained(pl, e.form)) << t;
  }
  EXPECT_EQ(catalog_build("J15").seed_planes.size(), 1u);
  EXPECT_EQ(catalog_build("J14").seed_planes.size(), 9u);
}

TEST(Catalog, J9bIsTheEqualBCDMember) {
  const CatalogEntry fam = catalog_build("F-J9");
  const MultiPoly m = family_member(fam, {FieldElement(-3), FieldElement(1), FieldElement(1), FieldElement(1)});
  EXPECT_TRUE(proportional(m, catalog_build("J9b").form));
}

TEST(Catalog, J15IsTheRestrictedSegreCubic) {
  const CatalogEntry e = catalog_build("J15");
  ASSERT_TRUE(e.ambient_form.has_value());
  EXPECT_EQ(e.form, p("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 - (x0 + x1 + x2 + x3 + x4)^3"));
}

TEST(Catalog, FamilyMemberChecksArity) {
  EXPECT_THROW(family_member(catalog_build("F-J9"), {FieldElement(1)}), DimensionMismatch);
}

TEST(AutomorphismGroup, TableOrders) {
  for (const auto& t : table_tags()) {
    const CatalogEntry e = catalog_build(t);
    const GroupHandle g = compute_automorphism_group(e.form, e.seed_points);
    EXPECT_EQ(g.order(), e.aut_order) << t;
    EXPECT_EQ(identify(fingerprint(g)), e.aut_name) << t;
  }
}

TEST(AutomorphismGroup, J9FamilyLoci) {
  const CatalogEntry fam = catalog_build("F-J9");
  auto aut = [&](long a, long b, long c, long d) {
    const MultiPoly f = family_member(fam, {FieldElement(a), FieldElement(b), FieldElement(c), FieldElement(d)});
    return compute_automorphism_group(f, fam.seed_points);
  };
  const GroupHandle s5 = aut(1, 1, -1, -1);
  EXPECT_EQ(s5.order(), 120u);
  EXPECT_EQ(identify(fingerprint(s5)), "Sym5");
  const GroupHandle bcd = aut(-3, 1, 1, 1);
  EXPECT_EQ(bcd.order(), 72u);
  EXPECT_EQ(identify(fingerprint(bcd)), "Sym3^2:C2");
  EXPECT_EQ(identify(fingerprint(aut(-5, 1, 2, 2))), "Dih12");
  EXPECT_EQ(identify(fingerprint(aut(2, 1, -1, -2))), "Sym4");
  EXPECT_EQ(aut(-6, 1, 2, 3).order(), 6u);
}

TEST(AutomorphismGroup, J14ContainsTransitiveC3Squared) {
  const CatalogEntry e = catalog_build("J14");
  const GroupHandle aut = compute_automorphism_group(e.form, e.seed_points);
  const SubgroupSpec spec{"C3^2", "C3^2", GeneratorAction::CoordinatePerms, {"(1,2,3)", "(4,5,6)"}, false, true};
  const GroupHandle g = resolve_subgroup(aut, spec, e.form, e.seed_points);
  EXPECT_EQ(g.order(), 9u);
  EXPECT_TRUE(is_transitive(orbits(g, e.seed_points)));
}

TEST(LiftPointPermutation, NonLiftingPermutation) {
  const CatalogEntry fam = catalog_build("F-J9");
  const MultiPoly generic = family_member(fam, {FieldElement(-6), FieldElement(1), FieldElement(2), FieldElement(3)});
  EXPECT_FALSE(lift_point_permutation(generic, fam.seed_points, Perm::parse("(1,2)", 6)).has_value());
  const auto t = lift_point_permutation(generic, fam.seed_points, Perm::parse("(1,2,3)(4,5,6)", 6));
  ASSERT_TRUE(t.has_value());
  EXPECT_TRUE(preserves(*t, generic));
}

TEST(RationalSingularPoints, MatchesSeeds) {
  for (const std::string t : {"J15", "J14", "J9a", "J5a"}) {
    const CatalogEntry e = catalog_build(t);
    auto found = rational_singular_points(e.form);
    EXPECT_EQ(found.size(), e.seed_points.size()) << t;
    for (const auto& q : e.seed_points) EXPECT_NE(std::find(found.begin(), found.end(), q), found.end()) << t;
  }
  // Cone over a smooth cubic surface: one vertex. Cone over a plane cubic: a singular line.
  EXPECT_EQ(rational_singular_points(p("x0^3 + x1^3 + x2^3 + x3^3")).size(), 1u);
  EXPECT_THROW(rational_singular_points(p("x0^3 + x1^3 + x2^3")), NonIsolatedPoint);
}

TEST(CatalogProperty, CoordinatePermutationsPreserveSegre) {
  std::mt19937_64 rng(kSeed);
  const MultiPoly f = catalog_build("J15").form;
  for (int k = 0; k < kCases; ++k) {
    const Perm perm = random_perm(rng, 6);
    EXPECT_TRUE(preserves(restricted_coordinate_permutation(perm), f)) << perm.to_string();
  }
}

TEST(CatalogProperty, FamilySeedsStaySingular) {
  std::mt19937_64 rng(kSeed + 1);
  const CatalogEntry j11 = catalog_build("F-J11"), j9 = catalog_build("F-J9"), four = catalog_build("F-4NODE");
  for (int k = 0; k < kCases; ++k) {
    const MultiPoly a = family_member(j11, random_params(rng, 4));
    for (const auto& q : j11.seed_points) ASSERT_TRUE(singular_at(a, q));
    Vec abcd = random_params(rng, 3);
    abcd.push_back(-(abcd[0] + abcd[1] + abcd[2]));
    const MultiPoly b = family_member(j9, abcd);
    for (const auto& q : j9.seed_points) ASSERT_TRUE(singular_at(b, q));
    const MultiPoly c = family_member(four, random_params(rng, 11));
    for (const auto& q : four.seed_points) ASSERT_TRUE(singular_at(c, q));
  }
}

TEST(CatalogProperty, TransformSubspaceMapsBasis) {
  std::mt19937_64 rng(kSeed + 2);
  for (int k = 0; k < kCases; ++k) {
    const ProjTransform t(testkit::random_invertible(rng, 5));
    std::vector<Vec> gens;
    const int dim = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < dim; ++i) {
      Vec v;
      for (int j = 0; j < 5; ++j) v.push_back(testkit::random_element(rng, 1, 3));
      gens.push_back(v);
    }
    const LinearSubspace s = LinearSubspace::span(5, gens);
    const LinearSubspace img = transform_subspace(t, s);
    EXPECT_EQ(img.dim_proj(), s.dim_proj());
    for (const auto& g : gens) EXPECT_TRUE(img.contains(t.matrix() * g));
  }
}
