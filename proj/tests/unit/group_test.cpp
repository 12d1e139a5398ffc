#include <gtest/gtest.h>

#include <set>

#include "cubaut/group.hpp"
#include "test_support.hpp"

using namespace cubaut;
using cubaut::testkit::kCases;
using cubaut::testkit::kSeed;

namespace {

GroupHandle perms(std::initializer_list<const char*> cycles, int degree) {
  std::vector<Perm> gens;
  for (const char* c : cycles) gens.push_back(Perm::parse(c, degree));
  return GroupHandle::from_perms(gens);
}

Matrix rows(std::vector<Vec> r) { return Matrix::from_rows(r); }

Perm random_perm(std::mt19937_64& rng, int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin(), img.end(), rng);
  return Perm(img);
}

// Nodes of the six-node family, labelled p1..p6.
std::vector<ProjPoint> six_nodes() {
  return {ProjPoint::unit(5, 0), ProjPoint::unit(5, 2), ProjPoint::unit(5, 4),
          ProjPoint::unit(5, 1), ProjPoint::unit(5, 3), ProjPoint(Vec(5, FieldElement(1)))};
}

ProjTransform node_map(const char* cycles) {
  Perm h = Perm::parse(cycles, 6);
  auto src = six_nodes();
  std::vector<ProjPoint> dst;
  for (int i = 0; i < 6; ++i) dst.push_back(src[static_cast<std::size_t>(h(i))]);
  return frame_map(src, dst);
}

// Symmetries of the four-parameter family with node p1..p6 on x1..x3 axes.
ProjTransform sigma() {
  return ProjTransform(rows({{-1, 1, 1, 1, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}}));
}
ProjTransform sigma_prime() {
  return ProjTransform(rows({{-1, 1, 0, 0, 1}, {0, 1, 0, 0, 0}, {0, 0, -1, 0, 1}, {0, 0, 0, -1, 1}, {0, 0, 0, 0, 1}}));
}

std::vector<ProjTransform> sym3_on_123() {
  return {ProjTransform::permutation({0, 2, 1, 3, 4}), ProjTransform::permutation({0, 2, 3, 1, 4})};
}

}  // namespace

// -- Perm -----------------------------------------------------------------------

TEST(Perm, ParseAndPrint) {
  Perm p = Perm::parse("(1,2,3)(4,5,6)", 6);
  EXPECT_EQ(p(0), 1);
  EXPECT_EQ(p(2), 0);
  EXPECT_EQ(p(5), 3);
  EXPECT_EQ(p.to_string(), "(1,2,3)(4,5,6)");
  EXPECT_EQ(p.order(), 3);
  EXPECT_TRUE(Perm::parse("()", 4).is_identity());
  EXPECT_THROW(Perm::parse("(1,7)", 6), std::invalid_argument);
  EXPECT_THROW(Perm::parse("(1,2", 6), std::invalid_argument);
  EXPECT_THROW(Perm::parse("(1,1)", 6), std::invalid_argument);
}

TEST(Perm, CompositionAppliesRightFactorFirst) {
  Perm a = Perm::parse("(1,2)", 3), b = Perm::parse("(2,3)", 3);
  EXPECT_EQ((a * b)(1), a(b(1)));
  EXPECT_EQ((a * b).to_string(), "(1,2,3)");
  EXPECT_EQ(Perm::parse("(1,2)(2,3)", 3), a * b);
}

// -- closure -------------------------------------------------------------------

TEST(Closure, Examples) {
  EXPECT_EQ(perms({"(1,2)", "(1,2,3,4,5,6)"}, 6).order(), 720u);
  EXPECT_EQ(perms({"(1,2,3)(4,5,6)", "(1,4)(2,6)(3,5)"}, 6).order(), 6u);
  EXPECT_EQ(perms({"(1,2,3)(4,5,6)", "(1,4)(2,6)(3,5)", "(1,4,2,5,3,6)"}, 6).order(), 12u);
}

TEST(Closure, OrderBound) {
  EXPECT_THROW(GroupHandle::from_perms({Perm::parse("(1,2)", 6), Perm::parse("(1,2,3,4,5,6)", 6)}, 100),
               OrderBoundExceeded);
}

TEST(Closure, ProjectiveElementsUpToScalar) {
  // -I is the identity projectively
  Matrix minus = Matrix::identity(3).scaled(FieldElement(-1));
  Matrix swap = rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  auto proj = GroupHandle::from_transforms({ProjTransform(minus), ProjTransform(swap)});
  EXPECT_EQ(proj.order(), 2u);
  auto lin = GroupHandle::from_matrices({minus, swap});
  EXPECT_EQ(lin.order(), 4u);
}

TEST(Closure, SixNodeMapsReproduceTheNodeGroup) {
  auto h = GroupHandle::from_transforms({node_map("(1,2,3)(4,5,6)"), node_map("(1,4)(2,6)(3,5)")});
  EXPECT_EQ(h.order(), 6u);
  EXPECT_EQ(identify(fingerprint(h)), "Sym3");
  // the order-3 element is the explicit map (x4-x3 : -x3 : x0-x3 : x1-x3 : x2-x3)
  ProjTransform r(rows({{0, 0, 0, -1, 1}, {0, 0, 0, -1, 0}, {1, 0, 0, -1, 0}, {0, 1, 0, -1, 0}, {0, 0, 1, -1, 0}}));
  EXPECT_TRUE(h.index_of(r).has_value());
}

// -- orbits --------------------------------------------------------------------

TEST(Orbits, TrivialGroup) {
  auto g = GroupHandle::from_perms({Perm::identity(5)});
  EXPECT_EQ(g.order(), 1u);
  EXPECT_EQ(orbits(g).size(), 5u);
  EXPECT_FALSE(is_transitive(orbits(g)));
}

TEST(Orbits, DihedralOrbitOfLengthThree) {
  auto d = GroupHandle::from_transforms(
      {node_map("(1,2,3)(4,5,6)"), node_map("(1,4)(2,6)(3,5)"), node_map("(1,4,2,5,3,6)")});
  EXPECT_EQ(d.order(), 12u);
  EXPECT_EQ(identify(fingerprint(d)), "Dih12");
  auto orb = orbit_of(d, ProjPoint(Vec{1, -1, 0, -1, 1}));
  ASSERT_EQ(orb.size(), 3u);
  std::set<std::string> got;
  for (const auto& p : orb) got.insert(p.to_string());
  EXPECT_EQ(got, (std::set<std::string>{"(1:-1:0:-1:1)", "(1:1/2:1:0:1/2)", "(1:0:2:1:2)"}));
  EXPECT_TRUE(is_transitive(orbits(d, orb)));
  auto nodes = six_nodes();
  EXPECT_TRUE(is_transitive(orbits(d, nodes)));
  EXPECT_THROW(orbits(d, {ProjPoint(Vec{1, 2, 3, 4, 5})}), std::invalid_argument);
}

// -- fingerprints -----------------------------------------------------------------

TEST(Fingerprint, CyclicVersusSymmetric) {
  auto c6 = fingerprint(perms({"(1,2,3,4,5,6)"}, 6));
  auto s3 = fingerprint(perms({"(1,2)", "(1,2,3)"}, 3));
  EXPECT_EQ(c6.order, s3.order);
  EXPECT_NE(c6.element_orders, s3.element_orders);
  EXPECT_EQ(c6.element_orders.count(6), 1u);
  EXPECT_EQ(s3.element_orders, (std::map<int, int>{{1, 1}, {2, 3}, {3, 2}}));
  EXPECT_EQ(c6.abelian_invariants, std::vector<long>{6});
  EXPECT_EQ(s3.abelian_invariants, std::vector<long>{2});
}

TEST(Fingerprint, Alt5IsPerfect) {
  auto f = fingerprint(perms({"(1,2,3)", "(1,2,3,4,5)"}, 5));
  EXPECT_EQ(f.order, 60u);
  EXPECT_EQ(f.element_orders, (std::map<int, int>{{1, 1}, {2, 15}, {3, 20}, {5, 24}}));
  EXPECT_TRUE(f.abelian_invariants.empty());
  EXPECT_EQ(f.derived_series, std::vector<std::size_t>{60});
  EXPECT_EQ(f.center_order, 1u);
}

TEST(Fingerprint, AbelianInvariants) {
  EXPECT_EQ(fingerprint(perms({"(1,2)", "(3,4)", "(5,6,7)"}, 7)).abelian_invariants, (std::vector<long>{2, 6}));
  EXPECT_EQ(fingerprint(perms({"(1,2,3,4)", "(5,6)"}, 6)).abelian_invariants, (std::vector<long>{2, 4}));
  EXPECT_EQ(fingerprint(perms({"(1,2)", "(1,2,3,4)"}, 4)).derived_series, (std::vector<std::size_t>{24, 12, 4, 1}));
}

TEST(Fingerprint, ReferenceCatalogIsSeparated) {
  const auto& groups = reference_groups();
  ASSERT_EQ(groups.size(), 15u);
  const std::map<std::string, std::size_t> orders = {
      {"Sym6", 720}, {"Sym5", 120},  {"Alt6", 360}, {"Alt5", 60},  {"Sym3^2:C2", 72},
      {"Sym3^2", 36}, {"C3^2:C4", 36}, {"C5:C4", 20}, {"Dih12", 12}, {"Sym4xC2", 48},
      {"Sym4", 24},   {"Sym3xC3", 18}, {"Dih10", 10}, {"C3^2", 9},  {"Sym3", 6}};
  for (const auto& g : groups) {
    EXPECT_EQ(reference_fingerprint(g.name).order, orders.at(g.name)) << g.name;
    EXPECT_EQ(identify(reference_fingerprint(g.name)), g.name);
  }
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i + 1; j < groups.size(); ++j)
      EXPECT_FALSE(reference_fingerprint(groups[i].name) == reference_fingerprint(groups[j].name));
}

TEST(Fingerprint, ConjugationInvariant) {
  std::mt19937_64 rng(kSeed);
  for (int c = 0; c < kCases; ++c) {
    const int n = 5;
    Perm a = random_perm(rng, n), b = random_perm(rng, n), g = random_perm(rng, n);
    auto h = GroupHandle::from_perms({a, b});
    auto hc = GroupHandle::from_perms({g * a * g.inverse(), g * b * g.inverse()});
    EXPECT_EQ(fingerprint(h), fingerprint(hc));
    EXPECT_EQ(120 % h.order(), 0u);
    const auto& f = fingerprint(h);
    long ab = 1;
    for (long x : f.abelian_invariants) ab *= x;
    EXPECT_EQ(static_cast<std::size_t>(ab) * (f.derived_series.size() > 1 ? f.derived_series[1] : f.order), f.order);
  }
}

// -- orbit properties --------------------------------------------------------------

TEST(Orbits, PartitionAndDivideOrder) {
  std::mt19937_64 rng(kSeed + 1);
  for (int c = 0; c < kCases; ++c) {
    const int n = 6;
    std::vector<Perm> gens;
    std::uniform_int_distribution<int> k(1, 2);
    for (int i = k(rng); i > 0; --i) {
      Perm p = random_perm(rng, n);
      // bias towards intransitive groups
      if (c % 2 == 0) p = p * p;
      gens.push_back(p);
    }
    auto g = GroupHandle::from_perms(gens);
    auto orb = orbits(g);
    std::vector<int> seen(n, 0);
    for (const auto& o : orb) {
      EXPECT_EQ(g.order() % o.size(), 0u);
      for (int x : o) ++seen[static_cast<std::size_t>(x)];
      for (int x : o)
        for (const auto& p : gens) EXPECT_TRUE(std::binary_search(o.begin(), o.end(), p(x)));
    }
    EXPECT_EQ(seen, std::vector<int>(n, 1));
  }
}

// -- subgroup scan -----------------------------------------------------------------

TEST(SubgroupScan, Sym3) {
  auto g = perms({"(1,2)", "(1,2,3)"}, 3);
  auto subs = subgroup_scan(g, [](const Subgroup&) { return true; });
  ASSERT_EQ(subs.size(), 4u);
  EXPECT_EQ(subs[0].order(), 1u);
  EXPECT_EQ(subs[1].order(), 2u);
  EXPECT_EQ(subs[1].conjugates, 3u);
  EXPECT_EQ(subs[2].order(), 3u);
  EXPECT_EQ(subs[3].order(), 6u);
}

TEST(SubgroupScan, IndexTwoSubgroupsOfWreath) {
  auto g = perms({"(1,2)", "(1,2,3)", "(1,4)(2,5)(3,6)"}, 6);
  auto subs = subgroup_scan(g, [](const Subgroup& s) { return s.order() == 36; });
  std::size_t total = 0;
  for (const auto& s : subs) total += s.conjugates;
  EXPECT_EQ(total, 3u);
}

TEST(SubgroupScan, TransitiveOrder72InSym6ContainsSylowNormalizer) {
  auto g = perms({"(1,2)", "(1,2,3,4,5,6)"}, 6);
  auto subs = subgroup_scan(g, [&](const Subgroup& s) {
    if (s.order() != 72) return false;
    std::vector<Perm> gens;
    for (int x : s.generators) gens.push_back(g.perm(x));
    return is_transitive(orbits(gens, 6));
  });
  ASSERT_FALSE(subs.empty());
  bool found = false;
  for (const auto& s : subs) {
    std::vector<int> p3;
    for (int x : s.elements) {
      int o = g.element_order(x);
      if (o == 1 || o == 3) p3.push_back(x);
    }
    if (p3.size() != 9) continue;
    std::vector<int> normalizer;
    for (std::size_t x = 0; x < g.order(); ++x) {
      bool keeps = true;
      for (int y : p3) {
        int c = g.mul(g.mul(static_cast<int>(x), y), g.inverse(static_cast<int>(x)));
        if (!std::binary_search(p3.begin(), p3.end(), c)) {
          keeps = false;
          break;
        }
      }
      if (keeps) normalizer.push_back(static_cast<int>(x));
    }
    if (normalizer == s.elements) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(SubgroupScan, LagrangeAndClassSizes) {
  std::mt19937_64 rng(kSeed + 2);
  for (int c = 0; c < kCases; ++c) {
    auto g = GroupHandle::from_perms({random_perm(rng, 4), random_perm(rng, 4)});
    auto subs = subgroup_scan(g, [](const Subgroup&) { return true; });
    for (const auto& s : subs) {
      EXPECT_EQ(g.order() % s.order(), 0u);
      EXPECT_EQ(g.order() % s.conjugates, 0u);
      EXPECT_EQ(g.subgroup_closure(s.generators), s.elements);
    }
    EXPECT_EQ(subs.front().order(), 1u);
    EXPECT_EQ(subs.back().order(), g.order());
  }
}

// -- invariant subspaces -------------------------------------------------------------

TEST(InvariantSubspaces, Sym5Permutation) {
  auto g = perms({"(1,2)", "(1,2,3,4,5)"}, 5);
  auto m = decompose_module(g);
  EXPECT_EQ(m.pieces.size(), 2u);
  EXPECT_TRUE(m.multiplicity_free());
  EXPECT_EQ(m.commutant_dimension, 2);
  auto d1 = invariant_subspaces(m, 1);
  ASSERT_EQ(d1.subspaces.size(), 1u);
  EXPECT_TRUE(d1.finite);
  EXPECT_EQ(d1.subspaces[0], LinearSubspace::span(5, {Vec(5, FieldElement(1))}));
  auto d4 = invariant_subspaces(m, 4);
  ASSERT_EQ(d4.subspaces.size(), 1u);
  EXPECT_EQ(d4.subspaces[0], LinearSubspace::from_equations(5, {Vec(5, FieldElement(1))}));
  EXPECT_FALSE(invariant_subspaces(m, 3).exists());
  EXPECT_FALSE(invariant_subspaces(m, 2).exists());
}

TEST(InvariantSubspaces, TrivialGroupGivesFlagFamily) {
  auto g = GroupHandle::from_perms({Perm::identity(5)});
  auto m = decompose_module(g);
  EXPECT_EQ(m.pieces.size(), 5u);
  EXPECT_EQ(m.type_multiplicity, std::vector<int>{5});
  for (int d = 1; d <= 4; ++d) {
    auto r = invariant_subspaces(m, d);
    EXPECT_FALSE(r.finite);
    ASSERT_EQ(r.subspaces.size(), 1u);
    EXPECT_EQ(r.subspaces[0].dim_proj(), d - 1);
  }
  // nested witnesses form a full flag
  for (int d = 1; d < 4; ++d)
    EXPECT_TRUE(invariant_subspaces(m, d + 1).subspaces[0].contains(invariant_subspaces(m, d).subspaces[0]));
}

TEST(InvariantSubspaces, Sym4TimesC2Plane) {
  std::vector<ProjTransform> gens = sym3_on_123();
  gens.push_back(sigma());
  gens.push_back(sigma_prime());
  auto g = GroupHandle::from_transforms(gens);
  EXPECT_EQ(g.order(), 48u);
  EXPECT_EQ(identify(fingerprint(g)), "Sym4xC2");
  auto planes = invariant_subspaces(g, 3);
  auto target = parse_subspace("x4, x0 - 1/2*(x1 + x2 + x3)", 5);
  EXPECT_NE(std::find(planes.subspaces.begin(), planes.subspaces.end(), target), planes.subspaces.end());
  for (const auto& s : planes.subspaces) EXPECT_TRUE(is_invariant(g, s));
}

TEST(FixedFlats, CyclicShiftNeedsConductorFive) {
  auto g = GroupHandle::from_transforms({ProjTransform::permutation({1, 2, 3, 4, 0})});
  auto f = fixed_flats(g);
  ASSERT_EQ(f.points.subspaces.size(), 5u);
  EXPECT_TRUE(f.points.finite);
  std::set<std::string> want;
  for (int k = 0; k < 5; ++k) {
    Vec v;
    for (int j = 0; j < 5; ++j) v.push_back(FieldElement::zeta(5, k * j));
    want.insert(LinearSubspace::span(5, {v}).to_string());
  }
  std::set<std::string> got;
  for (const auto& s : f.points.subspaces) got.insert(s.to_string());
  EXPECT_EQ(got, want);
  int cond = 1;
  for (const auto& s : f.points.subspaces)
    for (const auto& x : s.basis()[0]) cond = std::max(cond, x.conductor());
  EXPECT_EQ(cond, 5);
  EXPECT_EQ(f.lines.subspaces.size(), 10u);
  EXPECT_EQ(f.planes.subspaces.size(), 10u);
}

TEST(FixedFlats, Sym5HasOnlyTheCentroid) {
  std::vector<ProjTransform> gens = {ProjTransform::permutation({1, 0, 2, 3, 4}),
                                     ProjTransform::permutation({1, 2, 3, 4, 0})};
  auto f = fixed_flats(GroupHandle::from_transforms(gens));
  ASSERT_EQ(f.points.subspaces.size(), 1u);
  EXPECT_TRUE(f.points.subspaces[0].contains(ProjPoint(Vec(5, FieldElement(1)))));
  EXPECT_FALSE(f.lines.exists());
  EXPECT_FALSE(f.planes.exists());
}

TEST(FixedFlats, C2TimesSym3Plane) {
  std::vector<ProjTransform> gens = sym3_on_123();
  gens.push_back(sigma());
  auto g = GroupHandle::from_transforms(gens);
  EXPECT_EQ(g.order(), 12u);
  auto f = fixed_flats(g);
  auto target = parse_subspace("x1 + x2 + x3, x4", 5);
  EXPECT_NE(std::find(f.planes.subspaces.begin(), f.planes.subspaces.end(), target), f.planes.subspaces.end());
}

TEST(InvariantSubspaces, PermutationGroupsProperties) {
  std::mt19937_64 rng(kSeed + 3);
  const LinearSubspace ones = LinearSubspace::span(5, {Vec(5, FieldElement(1))});
  for (int c = 0; c < kCases; ++c) {
    std::vector<Perm> gens = {random_perm(rng, 5)};
    if (c % 3 != 0) gens.push_back(random_perm(rng, 5));
    auto g = GroupHandle::from_perms(gens);
    auto m = decompose_module(g);
    int total = 0;
    for (const auto& p : m.pieces) total += p.dim_proj() + 1;
    EXPECT_EQ(total, 5);
    int sq = 0;
    for (std::size_t t = 0; t < m.type_multiplicity.size(); ++t) sq += m.type_multiplicity[t] * m.type_multiplicity[t];
    EXPECT_EQ(sq, m.commutant_dimension);
    auto d1 = invariant_subspaces(m, 1);
    if (d1.finite) EXPECT_NE(std::find(d1.subspaces.begin(), d1.subspaces.end(), ones), d1.subspaces.end());
    else EXPECT_TRUE(d1.exists());
    for (int d = 1; d <= 4; ++d)
      for (const auto& s : invariant_subspaces(m, d).subspaces) EXPECT_TRUE(is_invariant(g, s));
    // each irreducible piece: every vector spins up to the whole piece
    auto lin = linearize(g);
    for (const auto& piece : m.pieces) {
      Vec v(5);
      for (const auto& b : piece.basis()) {
        FieldElement s = testkit::random_nonzero(rng, 1);
        for (int i = 0; i < 5; ++i) v[static_cast<std::size_t>(i)] += s * b[static_cast<std::size_t>(i)];
      }
      if (is_zero_vec(v)) continue;
      std::vector<Vec> span = {v};
      for (std::size_t i = 0; i < span.size() && span.size() <= 5; ++i)
        for (int k : lin.generators()) {
          Vec w = lin.matrix(k) * span[i];
          auto trial = span;
          trial.push_back(w);
          if (rank_of(trial) > rank_of(span)) span.push_back(w);
        }
      EXPECT_EQ(rank_of(span), piece.dim_proj() + 1);
    }
  }
}

TEST(InvariantSubspaces, ConjugatedMatrixGroups) {
  std::mt19937_64 rng(kSeed + 4);
  for (int c = 0; c < kCases; ++c) {
    Perm a = random_perm(rng, 4), b = random_perm(rng, 4);
    Matrix t = testkit::random_invertible(rng, 4);
    Matrix ti = *t.inverse();
    auto pm = [](const Perm& p) {
      Matrix m(p.degree(), p.degree());
      for (int i = 0; i < p.degree(); ++i) m(p(i), i) = 1;
      return m;
    };
    auto g = GroupHandle::from_matrices({t * pm(a) * ti, t * pm(b) * ti});
    auto base = decompose_module(GroupHandle::from_perms({a, b}));
    auto conj = decompose_module(g);
    EXPECT_EQ(base.pieces.size(), conj.pieces.size());
    EXPECT_EQ(base.commutant_dimension, conj.commutant_dimension);
    for (int d = 1; d <= 3; ++d) {
      auto r = invariant_subspaces(conj, d);
      EXPECT_EQ(r.subspaces.size(), invariant_subspaces(base, d).subspaces.size());
      for (const auto& s : r.subspaces) EXPECT_TRUE(is_invariant(g, s));
    }
  }
}
