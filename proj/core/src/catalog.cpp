#include "cubaut/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "cubaut/singularity.hpp"

namespace cubaut {

namespace {

MultiPoly P(const std::string& s, int conductor = 1) { return parse_poly(s, {5, conductor}); }

/// x-form whose every coefficient is scaled by a parameter polynomial.
ParamPoly with_coefficient(const MultiPoly& x, const MultiPoly& coeff) {
  std::vector<ParamPoly::Term> terms;
  for (const auto& [m, c] : x.terms()) terms.emplace_back(m, coeff.scaled(c));
  return ParamPoly::from_terms(x.nvars(), std::move(terms));
}

MultiPoly param(int nparams, int i) { return MultiPoly::variable(nparams, i); }

/// Sum over i mod 5 of x_i x_{i+a} x_{i+b}.
std::string cyclic_sum(int a, int b) {
  std::string s;
  for (int i = 0; i < 5; ++i) {
    if (i) s += " + ";
    s += "x" + std::to_string(i) + "*x" + std::to_string((i + a) % 5) + "*x" + std::to_string((i + b) % 5);
  }
  return s;
}

Vec ones(int n) { return Vec(static_cast<std::size_t>(n), FieldElement(1)); }

Vec vec(std::initializer_list<long> v) {
  Vec out;
  for (long x : v) out.emplace_back(x);
  return out;
}

ProjPoint pt(std::initializer_list<long> v) { return ProjPoint(vec(v)); }

ProjPoint first_five(const Vec& v6) { return ProjPoint(Vec(v6.begin(), v6.begin() + 5)); }

std::vector<ProjPoint> j9_points() {
  return {ProjPoint::unit(5, 0), ProjPoint::unit(5, 2), ProjPoint::unit(5, 4),
          ProjPoint::unit(5, 1), ProjPoint::unit(5, 3), ProjPoint(ones(5))};
}

std::vector<ProjPoint> coordinate_points(int k) {
  std::vector<ProjPoint> out;
  for (int i = 0; i < k; ++i) out.push_back(ProjPoint::unit(5, i));
  return out;
}

SubgroupSpec whole(const std::string& fp) { return {"Aut", fp, GeneratorAction::Whole, {}, false, false}; }

CatalogEntry segre() {
  CatalogEntry e;
  e.tag = "J15";
  MultiPoly cubes(6);
  for (int i = 0; i < 6; ++i) cubes += MultiPoly::variable(6, i).pow(3);
  e.ambient_form = cubes;
  e.form = hyperplane_restrict(cubes, ones(6));
  e.s = 10, e.p = 15, e.r = 6;
  e.type1 = "J15", e.type2 = "31°";
  e.aut_order = 720, e.aut_name = "Sym6";
  e.minimal = {
      {"Alt5", "Alt5", GeneratorAction::CoordinatePerms, {"(1,2,3)", "(1,2,3,4,5)"}, false, true},
      {"Sym5", "Sym5", GeneratorAction::CoordinatePerms, {"(1,2)", "(1,2,3,4,5)"}, false, true},
      {"Alt6", "Alt6", GeneratorAction::CoordinatePerms, {"(1,2,3)", "(2,3,4,5,6)"}, true, true},
      whole("Sym6"),
  };
  // Three coordinates +1 and three -1, first coordinate +1.
  for (int mask = 0; mask < 64; ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != 3 || !(mask & 1)) continue;
    Vec v;
    for (int i = 0; i < 6; ++i) v.emplace_back((mask >> i) & 1 ? 1 : -1);
    e.seed_points.push_back(first_five(v));
  }
  e.seed_planes = {LinearSubspace::from_equations(5, {vec({1, 1, 0, 0, 0}), vec({0, 0, 1, 1, 0})})};
  e.citation = "Segre cubic: sum x_i = sum x_i^3 = 0 in P^5";
  return e;
}

CatalogEntry j14() {
  CatalogEntry e;
  e.tag = "J14";
  const MultiPoly z = parse_poly("x0*x1*x2 - x3*x4*x5", {6, 1});
  e.ambient_form = z;
  e.form = hyperplane_restrict(z, ones(6));
  e.s = 9, e.p = 9, e.r = 5;
  e.type1 = "J14", e.type2 = "30°";
  e.aut_order = 72, e.aut_name = "Sym3^2:C2";
  e.minimal = {
      {"Sym3^2", "Sym3^2", GeneratorAction::CoordinatePerms, {"(1,2,3)", "(4,5,6)", "(1,2)(4,5)", "(1,4)(2,5)(3,6)"}, true, true},
      {"C3^2:C4", "C3^2:C4", GeneratorAction::CoordinatePerms, {"(1,2,3)", "(4,5,6)", "(1,4,2,5)(3,6)"}, true, true},
      whole("Sym3^2:C2"),
  };
  // Node l_ij = e_i - e_{3+j}; plane M_ij = {x_i = x_{3+j} = 0}, in the same order.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Vec v(6, FieldElement(0));
      v[static_cast<std::size_t>(i)] = 1;
      v[static_cast<std::size_t>(3 + j)] = -1;
      e.seed_points.push_back(first_five(v));
      Vec a(5, FieldElement(0)), b(5, FieldElement(0));
      a[static_cast<std::size_t>(i)] = 1;
      if (j < 2)
        b[static_cast<std::size_t>(3 + j)] = 1;
      else
        b = ones(5);
      e.seed_planes.push_back(LinearSubspace::from_equations(5, {a, b}));
    }
  e.citation = "x0 x1 x2 - x3 x4 x5 = sum x_i = 0 in P^5";
  return e;
}

CatalogEntry j9a() {
  CatalogEntry e;
  e.tag = "J9a";
  e.form = P(cyclic_sum(1, 2)) - P(cyclic_sum(1, 3));
  e.s = 6, e.p = 0, e.r = 2;
  e.type1 = "J9", e.type2 = "28°";
  e.aut_order = 120, e.aut_name = "Sym5";
  e.minimal = {whole("Sym5")};
  e.seed_points = j9_points();
  e.citation = "sum x_i x_{i+1} x_{i+2} - sum x_i x_{i+1} x_{i+3}, indices mod 5";
  return e;
}

CatalogEntry j9b() {
  CatalogEntry e;
  e.tag = "J9b";
  e.form = P("x0*x1*x2 - x0*x1*x3 + x0*x1*x4 + x0*x2*x3 - 3*x0*x2*x4 + x0*x3*x4 - x1*x2*x3 + x1*x2*x4 - x1*x3*x4 + "
             "x2*x3*x4");
  e.s = 6, e.p = 0, e.r = 2;
  e.type1 = "J9", e.type2 = "28°";
  e.aut_order = 72, e.aut_name = "Sym3^2:C2";
  e.minimal = {
      {"Sym3^2", "Sym3^2", GeneratorAction::SingularPerms, {"(1,2,3)", "(4,5,6)", "(1,2)(4,5)", "(1,4)(2,6)(3,5)"}, false, true},
      whole("Sym3^2:C2"),
  };
  e.seed_points = j9_points();
  e.citation = "explicit ten-term cubic";
  return e;
}

MultiPoly j5_form(const FieldElement& a) { return P(cyclic_sum(1, 2)) + P(cyclic_sum(1, 3)).scaled(a); }

CatalogEntry j5a() {
  CatalogEntry e;
  e.tag = "J5a";
  e.form = j5_form(FieldElement(1));
  e.s = 5, e.p = 0, e.r = 1;
  e.type1 = "J5", e.type2 = "27°";
  e.aut_order = 120, e.aut_name = "Sym5";
  e.minimal = {
      {"C5:C4", "C5:C4", GeneratorAction::SingularPerms, {"(1,2,3,4,5)", "(2,3,5,4)"}, false, true},
      {"Alt5", "Alt5", GeneratorAction::SingularPerms, {"(1,2,3)", "(1,2,3,4,5)"}, false, true},
      whole("Sym5"),
  };
  e.seed_points = coordinate_points(5);
  e.citation = "sum over i<j<k of x_i x_j x_k";
  return e;
}

CatalogEntry j5b() {
  CatalogEntry e;
  e.tag = "J5b";
  e.conductor = 3;
  e.form = j5_form(FieldElement::zeta(3));
  e.s = 5, e.p = 0, e.r = 1;
  e.type1 = "J5", e.type2 = "27°";
  e.aut_order = 60, e.aut_name = "Alt5";
  e.minimal = {whole("Alt5")};
  e.seed_points = coordinate_points(5);
  e.citation = "five-point family with a = omega, omega^2 + omega + 1 = 0";
  return e;
}

CatalogEntry family_j11() {
  CatalogEntry e;
  e.tag = "F-J11";
  e.parametric = true;
  e.parameters = {"c1", "c2", "c3", "d"};
  const int np = 4;
  e.family = with_coefficient(P("x1*x2*x3 + x4*x0*(x0 - x1 - x2 - x3)"), MultiPoly::constant(np, 1)) +
             with_coefficient(P("x1*x4^2"), param(np, 0)) + with_coefficient(P("x2*x4^2"), param(np, 1)) +
             with_coefficient(P("x3*x4^2"), param(np, 2)) + with_coefficient(P("x4^3"), param(np, 3));
  e.s = 6, e.p = 3, e.r = 3;
  e.type1 = "J11";
  e.seed_points = {pt({0, 1, 0, 0, 0}), pt({1, 1, 0, 0, 0}), pt({0, 0, 1, 0, 0}),
                   pt({1, 0, 1, 0, 0}), pt({0, 0, 0, 1, 0}), pt({1, 0, 0, 1, 0})};
  e.citation = "six nodes on three planes, normalized form";
  return e;
}

CatalogEntry family_j9() {
  CatalogEntry e;
  e.tag = "F-J9";
  e.parametric = true;
  e.parameters = {"A", "B", "C", "D"};
  const int np = 4;
  e.family = with_coefficient(P("x0*x2*x4"), param(np, 0)) +
             with_coefficient(P("x0*x1*x2 - x1*x2*x3 + x2*x3*x4"), param(np, 1)) +
             with_coefficient(P("x0*x1*x4 - x0*x1*x3 + x0*x2*x3"), param(np, 2)) +
             with_coefficient(P("x0*x3*x4 + x1*x2*x4 - x1*x3*x4"), param(np, 3));
  e.s = 6, e.p = 0, e.r = 2;
  e.type1 = "J9";
  e.seed_points = j9_points();
  e.citation = "six nodes at the standard frame, A + B + C + D = 0";
  return e;
}

CatalogEntry family_four_node() {
  CatalogEntry e;
  e.tag = "F-4NODE";
  e.parametric = true;
  e.parameters = {"a01", "a02", "a03", "a12", "a13", "a23", "b0", "b1", "b2", "b3", "c"};
  const int np = 11;
  ParamPoly f = with_coefficient(P("x0*x1*x2 + x0*x1*x3 + x0*x2*x3 + x1*x2*x3"), MultiPoly::constant(np, 1));
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      f += with_coefficient(P("x4*x" + std::to_string(i) + "*x" + std::to_string(j)), param(np, k++));
  for (int i = 0; i < 4; ++i) f += with_coefficient(P("x4^2*x" + std::to_string(i)), param(np, 6 + i));
  f += with_coefficient(P("x4^3"), param(np, 10));
  e.family = f;
  e.s = 4, e.p = 0, e.r = 1;
  e.type1 = "J4";
  e.seed_points = coordinate_points(4);
  e.citation = "four-nodal cubic surface section extended by x4";
  return e;
}

}  // namespace

const std::vector<std::string>& table_tags() {
  static const std::vector<std::string> tags{"J15", "J14", "J9a", "J9b", "J5a", "J5b"};
  return tags;
}

const std::vector<std::string>& catalog_tags() {
  static const std::vector<std::string> tags{"J15", "J14", "J9a", "J9b", "J5a", "J5b", "F-J11", "F-J9", "F-4NODE"};
  return tags;
}

CatalogEntry catalog_build(const std::string& tag) {
  if (tag == "J15") return segre();
  if (tag == "J14") return j14();
  if (tag == "J9a") return j9a();
  if (tag == "J9b") return j9b();
  if (tag == "J5a") return j5a();
  if (tag == "J5b") return j5b();
  if (tag == "F-J11") return family_j11();
  if (tag == "F-J9") return family_j9();
  if (tag == "F-4NODE") return family_four_node();
  throw UnknownTag(tag);
}

MultiPoly family_member(const CatalogEntry& e, const Vec& params) {
  if (!e.parametric) return e.form;
  if (params.size() != e.parameters.size()) throw DimensionMismatch("family_member: parameter count");
  return specialize(e.family, params);
}

MultiPoly hyperplane_restrict(const MultiPoly& f, const Vec& relation, int k) {
  return eliminate_variable(f, relation, k);
}

ProjTransform hyperplane_transform(const Matrix& m, const Vec& relation, int k) {
  const int n = m.rows();
  const FieldElement& ck = relation[static_cast<std::size_t>(k)];
  if (ck.is_zero()) throw DivisionByZero();
  Matrix lift(n, n - 1), drop(n - 1, n);
  for (int i = 0, col = 0; i < n; ++i) {
    if (i == k) continue;
    lift(i, col) = 1;
    lift(k, col) = -relation[static_cast<std::size_t>(i)] / ck;
    drop(col, i) = 1;
    ++col;
  }
  const Matrix t = drop * m * lift;
  // The hyperplane must be preserved: relation . (m lift) = 0.
  const Matrix image = m * lift;
  for (int col = 0; col < n - 1; ++col)
    if (!dot(relation, image.column(col)).is_zero()) throw std::invalid_argument("hyperplane_transform: hyperplane not preserved");
  return ProjTransform(t);
}

ProjTransform restricted_coordinate_permutation(const Perm& p) {
  return hyperplane_transform(ProjTransform::permutation(p.images()).matrix(), ones(p.degree()));
}

LinearSubspace transform_subspace(const ProjTransform& t, const LinearSubspace& s) {
  std::vector<Vec> img;
  for (const auto& b : s.basis()) img.push_back(t.matrix() * b);
  return LinearSubspace::span(s.ambient(), img);
}

namespace {

std::optional<std::vector<int>> general_six(const std::vector<ProjPoint>& points) {
  const int n = static_cast<int>(points.size());
  std::vector<int> idx(6);
  std::vector<bool> sel(static_cast<std::size_t>(n), false);
  std::fill(sel.begin(), sel.begin() + 6, true);
  do {
    std::vector<ProjPoint> sub;
    idx.clear();
    for (int i = 0; i < n; ++i)
      if (sel[static_cast<std::size_t>(i)]) {
        idx.push_back(i);
        sub.push_back(points[static_cast<std::size_t>(i)]);
      }
    if (general_position(sub).ok) return idx;
  } while (std::prev_permutation(sel.begin(), sel.end()));
  return std::nullopt;
}

bool permutes_as(const ProjTransform& t, const std::vector<ProjPoint>& points, const Perm& perm) {
  for (int i = 0; i < perm.degree(); ++i)
    if (!(t.apply(points[static_cast<std::size_t>(i)]) == points[static_cast<std::size_t>(perm(i))])) return false;
  return true;
}

/// Lifts of a permutation of five points in general position.
std::vector<ProjTransform> five_point_lifts(const MultiPoly& f, const std::vector<ProjPoint>& points,
                                            const std::vector<int>& perm) {
  std::vector<Vec> cols;
  for (const auto& p : points) cols.push_back(p.coords());
  const Matrix m = Matrix::from_columns(cols);
  const Matrix minv = *m.inverse();
  const MultiPoly g = substitute_linear(f, m);
  std::vector<ProjTransform> out;
  for (const auto& t : diagonal_lifts(g, perm, 60)) out.emplace_back(m * t.matrix() * minv);
  return out;
}

}  // namespace

std::optional<ProjTransform> lift_point_permutation(const MultiPoly& f, const std::vector<ProjPoint>& points,
                                                    const Perm& perm) {
  if (perm.degree() != static_cast<int>(points.size())) throw DimensionMismatch("lift_point_permutation: degree");
  if (points.size() >= 6) {
    const auto six = general_six(points);
    if (!six) throw NoGeneralPositionFrame("no six singular points in general position");
    std::vector<ProjPoint> src, dst;
    for (int i : *six) {
      src.push_back(points[static_cast<std::size_t>(i)]);
      dst.push_back(points[static_cast<std::size_t>(perm(i))]);
    }
    const ProjTransform t = frame_map(src, dst);
    if (!permutes_as(t, points, perm) || !preserves(t, f)) return std::nullopt;
    return t;
  }
  if (points.size() == 5 && general_position(points).ok) {
    const auto lifts = five_point_lifts(f, points, perm.images());
    if (lifts.size() != 1) return std::nullopt;
    return lifts.front();
  }
  throw NoGeneralPositionFrame("fewer than five points or points not in general position");
}

GroupHandle compute_automorphism_group(const MultiPoly& f, const std::vector<ProjPoint>& points,
                                       AutomorphismStats* stats) {
  AutomorphismStats local;
  std::vector<ProjTransform> found;
  const int n = static_cast<int>(points.size());
  std::optional<std::vector<int>> base = n >= 6 ? general_six(points) : std::nullopt;
  if (base) {
    std::vector<ProjPoint> src;
    for (int i : *base) src.push_back(points[static_cast<std::size_t>(i)]);
    std::unordered_set<ProjPoint, ProjPointHash> pointset(points.begin(), points.end());
    std::vector<bool> sel(static_cast<std::size_t>(n), false);
    std::fill(sel.begin(), sel.begin() + 6, true);
    do {
      std::vector<ProjPoint> dst;
      for (int i = 0; i < n; ++i)
        if (sel[static_cast<std::size_t>(i)]) dst.push_back(points[static_cast<std::size_t>(i)]);
      if (!general_position(dst).ok) continue;
      std::vector<int> order(6);
      std::iota(order.begin(), order.end(), 0);
      do {
        std::vector<ProjPoint> tuple;
        for (int k : order) tuple.push_back(dst[static_cast<std::size_t>(k)]);
        ++local.frames_tried;
        const ProjTransform t = frame_map(src, tuple);
        bool ok = true;
        for (const auto& p : points)
          if (!pointset.count(t.apply(p))) {
            ok = false;
            break;
          }
        if (ok && preserves(t, f)) found.push_back(t);
      } while (std::next_permutation(order.begin(), order.end()));
    } while (std::prev_permutation(sel.begin(), sel.end()));
  } else if (n == 5 && general_position(points).ok) {
    std::vector<int> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      ++local.frames_tried;
      for (auto& t : five_point_lifts(f, points, perm)) found.push_back(std::move(t));
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    throw NoGeneralPositionFrame("no six singular points in general position and not five points in general position");
  }
  local.frames_accepted = found.size();
  if (stats) *stats = local;

  std::vector<ProjTransform> gens;
  GroupHandle g = GroupHandle::from_transforms({ProjTransform::identity(f.nvars())});
  for (const auto& t : found)
    if (!g.index_of(t)) {
      gens.push_back(t);
      g = GroupHandle::from_transforms(gens);
    }
  if (g.order() != found.size()) throw std::logic_error("automorphism lifts do not form a group");
  return g;
}

GroupHandle resolve_subgroup(const GroupHandle& aut, const SubgroupSpec& spec, const MultiPoly& f,
                             const std::vector<ProjPoint>& points) {
  if (spec.action == GeneratorAction::Whole) return aut;
  std::vector<ProjTransform> gens;
  for (const auto& s : spec.generators) {
    if (spec.action == GeneratorAction::CoordinatePerms) {
      gens.push_back(restricted_coordinate_permutation(Perm::parse(s, 6)));
    } else {
      const auto t = lift_point_permutation(f, points, Perm::parse(s, static_cast<int>(points.size())));
      if (!t) throw std::invalid_argument("generator " + s + " does not lift to an automorphism");
      gens.push_back(*t);
    }
  }
  return GroupHandle::from_transforms(gens);
}

// -- rational singular points --------------------------------------------------

namespace {

/// Rational roots of a polynomial with rational coefficients, low degree first.
std::vector<Rational> rational_roots(std::vector<FieldElement> c) {
  std::vector<Rational> out;
  for (const auto& x : c)
    if (!x.is_rational()) return out;
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  if (c.size() <= 1) return out;
  if (c.front().is_zero()) {
    out.emplace_back(0);
    while (c.front().is_zero()) c.erase(c.begin());
  }
  mpz_class den = 1;
  for (const auto& x : c) den = lcm(den, x.rational().get_den());
  std::vector<mpz_class> z;
  for (const auto& x : c) z.emplace_back(mpz_class(x.rational() * den));
  auto divisors = [](mpz_class v) {
    v = abs(v);
    std::vector<mpz_class> d;
    for (mpz_class k = 1; k * k <= v; ++k) {
      if (k > 1000000) throw std::runtime_error("rational_roots: coefficient too large to factor");
      if (v % k == 0) {
        d.push_back(k);
        if (k * k != v) d.push_back(v / k);
      }
    }
    return d;
  };
  for (const auto& p : divisors(z.front()))
    for (const auto& q : divisors(z.back()))
      for (int sign : {1, -1}) {
        Rational r(sign * p, q);
        r.canonicalize();
        Rational v = 0;
        for (std::size_t k = z.size(); k-- > 0;) v = v * r + Rational(z[k]);
        if (v == 0 && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
      }
  return out;
}

}  // namespace

std::vector<ProjPoint> rational_singular_points(const MultiPoly& f, const GroebnerOptions& opts) {
  const int n = f.nvars();
  const auto grad = gradient(f);
  std::vector<ProjPoint> out;
  for (int c = 0; c < n; ++c) {
    Ideal gens = grad;
    gens.push_back(MultiPoly::variable(n, c) - MultiPoly::constant(n, 1));
    for (int j = 0; j < c; ++j) gens.push_back(MultiPoly::variable(n, j));
    const GroebnerBasis gb = groebner(gens, opts);
    if (gb.is_unit()) continue;
    if (!quotient_dimension(gb)) throw NonIsolatedPoint("singular locus is not finite");
    std::vector<std::vector<Rational>> roots(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      if (i < c)
        roots[static_cast<std::size_t>(i)] = {Rational(0)};
      else if (i == c)
        roots[static_cast<std::size_t>(i)] = {Rational(1)};
      else
        roots[static_cast<std::size_t>(i)] = rational_roots(univariate_eliminant(gb, i));
    }
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    bool any = true;
    for (const auto& r : roots) any = any && !r.empty();
    while (any) {
      Vec v;
      for (int i = 0; i < n; ++i) v.emplace_back(roots[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]]);
      bool sing = true;
      for (const auto& g : grad)
        if (!evaluate(g, v).is_zero()) {
          sing = false;
          break;
        }
      if (sing) out.emplace_back(v);
      int k = 0;
      while (k < n && ++pick[static_cast<std::size_t>(k)] == roots[static_cast<std::size_t>(k)].size())
        pick[static_cast<std::size_t>(k++)] = 0;
      if (k == n) break;
    }
  }
  return out;
}

}  // namespace cubaut
