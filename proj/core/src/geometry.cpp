#include "cubaut/geometry.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>

namespace cubaut {

// -- points -----------------------------------------------------------------

ProjPoint::ProjPoint(Vec coords) : c_(normalized(std::move(coords))) {
  if (is_zero_vec(c_)) throw std::invalid_argument("projective point with all coordinates zero");
}

ProjPoint ProjPoint::unit(int n, int i) {
  Vec v(static_cast<std::size_t>(n), FieldElement(0));
  v[static_cast<std::size_t>(i)] = 1;
  return ProjPoint(std::move(v));
}

std::size_t ProjPoint::hash() const {
  std::size_t h = c_.size();
  for (const auto& x : c_) h = h * 1000003ULL ^ x.hash();
  return h;
}

std::string ProjPoint::to_string() const { return "(" + vec_to_string(c_, ":") + ")"; }

// -- subspaces --------------------------------------------------------------

LinearSubspace LinearSubspace::span(int ambient, const std::vector<Vec>& vectors) {
  LinearSubspace s;
  s.ambient_ = ambient;
  s.basis_ = row_basis(vectors);
  return s;
}

LinearSubspace LinearSubspace::span(const std::vector<ProjPoint>& points) {
  if (points.empty()) throw std::invalid_argument("span of no points needs an ambient dimension");
  std::vector<Vec> v;
  for (const auto& p : points) v.push_back(p.coords());
  return span(points[0].size(), v);
}

LinearSubspace LinearSubspace::from_equations(int ambient, const std::vector<Vec>& forms) {
  if (forms.empty()) return span(ambient, [&] {
      std::vector<Vec> id;
      for (int i = 0; i < ambient; ++i) id.push_back(ProjPoint::unit(ambient, i).coords());
      return id;
    }());
  return span(ambient, Matrix::from_rows(forms).nullspace());
}

std::vector<Vec> LinearSubspace::equations() const {
  if (basis_.empty()) return LinearSubspace::span(ambient_, [&] {
      std::vector<Vec> id;
      for (int i = 0; i < ambient_; ++i) id.push_back(ProjPoint::unit(ambient_, i).coords());
      return id;
    }()).basis();
  return row_basis(Matrix::from_rows(basis_).nullspace());
}

bool LinearSubspace::contains(const Vec& v) const {
  if (is_zero_vec(v)) return true;
  std::vector<Vec> rows = basis_;
  rows.push_back(v);
  return rank_of(rows) == static_cast<int>(basis_.size());
}

bool LinearSubspace::contains(const LinearSubspace& s) const {
  for (const auto& v : s.basis())
    if (!contains(v)) return false;
  return true;
}

std::string LinearSubspace::to_string() const {
  std::string out = "span{";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) out += ", ";
    out += "(" + vec_to_string(basis_[i], ":") + ")";
  }
  return out + "}";
}

std::pair<LinearSubspace, LinearSubspace> span_meet(const LinearSubspace& a, const LinearSubspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("span_meet: ambient mismatch");
  std::vector<Vec> all = a.basis();
  all.insert(all.end(), b.basis().begin(), b.basis().end());
  std::vector<Vec> eqs = a.equations();
  const auto eb = b.equations();
  eqs.insert(eqs.end(), eb.begin(), eb.end());
  return {LinearSubspace::span(a.ambient(), all), LinearSubspace::from_equations(a.ambient(), eqs)};
}

// -- transforms -------------------------------------------------------------

namespace {

Matrix normalize_matrix(Matrix m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return m(i, j).is_one() ? m : m.scaled(m(i, j).inverse());
  return m;
}

}  // namespace

ProjTransform::ProjTransform(const Matrix& m) {
  if (m.rows() != m.cols() || m.det().is_zero()) throw std::invalid_argument("projective transform needs an invertible matrix");
  m_ = normalize_matrix(m);
}

ProjTransform ProjTransform::permutation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(perm[static_cast<std::size_t>(i)], i) = 1;
  return ProjTransform(m);
}

ProjTransform ProjTransform::inverse() const { return ProjTransform(*m_.inverse()); }

// -- general position -----------------------------------------------------------

GeneralPositionResult general_position(const std::vector<ProjPoint>& points) {
  GeneralPositionResult res;
  if (points.empty()) return res;
  const int n = points[0].size();
  const int m = static_cast<int>(points.size());
  std::vector<int> idx;
  for (int d = 2; d <= std::min(n, m); ++d) {
    // Enumerate d-subsets in lexicographic order.
    idx.resize(static_cast<std::size_t>(d));
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      std::vector<Vec> rows;
      for (int i : idx) rows.push_back(points[static_cast<std::size_t>(i)].coords());
      if (rank_of(rows) < d) {
        res.ok = false;
        res.witness = idx;
        return res;
      }
      int k = d - 1;
      while (k >= 0 && idx[static_cast<std::size_t>(k)] == m - d + k) --k;
      if (k < 0) break;
      ++idx[static_cast<std::size_t>(k)];
      for (int j = k + 1; j < d; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return res;
}

namespace {

// Matrix sending the standard frame (e_0..e_n, sum e_i) to the points.
Matrix frame_matrix(const std::vector<ProjPoint>& pts) {
  const int n = pts[0].size();
  if (static_cast<int>(pts.size()) != n + 1) throw DegenerateFrame("a frame of P^" + std::to_string(n - 1) + " has " + std::to_string(n + 1) + " points");
  std::vector<Vec> cols;
  for (int i = 0; i < n; ++i) cols.push_back(pts[static_cast<std::size_t>(i)].coords());
  const Matrix base = Matrix::from_columns(cols);
  const auto lambda = base.solve(pts.back().coords());
  if (!lambda || base.rank() < n) throw DegenerateFrame("frame points are not in general position");
  for (const auto& l : *lambda)
    if (l.is_zero()) throw DegenerateFrame("frame points are not in general position");
  Matrix m = base;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) *= (*lambda)[static_cast<std::size_t>(j)];
  return m;
}

}  // namespace

ProjTransform frame_map(const std::vector<ProjPoint>& src, const std::vector<ProjPoint>& dst) {
  if (src.empty() || src.size() != dst.size()) throw DegenerateFrame("frame sizes differ");
  const Matrix ms = frame_matrix(src);
  const Matrix md = frame_matrix(dst);
  return ProjTransform(md * *ms.inverse());
}

bool preserves(const ProjTransform& t, const MultiPoly& f) {
  if (t.size() != f.nvars()) throw DimensionMismatch("preserves: dimension mismatch");
  const auto lambda = proportionality(f, substitute_linear(f, t.matrix()));
  return lambda.has_value() && !lambda->is_zero();
}

bool subspace_contained(const LinearSubspace& s, const MultiPoly& f) {
  if (s.ambient() != f.nvars()) throw DimensionMismatch("subspace_contained: ambient mismatch");
  if (s.is_empty()) return true;
  return restrict_to_span(f, s.basis()).is_zero();
}

bool plane_contained(const LinearSubspace& plane, const MultiPoly& f) { return subspace_contained(plane, f); }

// -- Smith form and torus equations --------------------------------------------

SmithForm smith_form(const std::vector<std::vector<long long>>& a) {
  const int m = static_cast<int>(a.size());
  const int n = m ? static_cast<int>(a[0].size()) : 0;
  SmithForm f;
  f.s = a;
  f.l.assign(static_cast<std::size_t>(m), std::vector<long long>(static_cast<std::size_t>(m), 0));
  f.r.assign(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < m; ++i) f.l[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  for (int i = 0; i < n; ++i) f.r[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  auto& s = f.s;
  auto at = [&](int i, int j) -> long long& { return s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  auto swap_rows = [&](int i, int j) {
    std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)]);
    std::swap(f.l[static_cast<std::size_t>(i)], f.l[static_cast<std::size_t>(j)]);
  };
  auto swap_cols = [&](int i, int j) {
    for (auto& row : s) std::swap(row[static_cast<std::size_t>(i)], row[static_cast<std::size_t>(j)]);
    for (auto& row : f.r) std::swap(row[static_cast<std::size_t>(i)], row[static_cast<std::size_t>(j)]);
  };
  auto row_sub = [&](int i, int t, long long q) {  // row_i -= q row_t
    for (int j = 0; j < n; ++j) at(i, j) -= q * at(t, j);
    for (int j = 0; j < m; ++j) f.l[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= q * f.l[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
  };
  auto col_sub = [&](int j, int t, long long q) {  // col_j -= q col_t
    for (int i = 0; i < m; ++i) at(i, j) -= q * at(i, t);
    for (int i = 0; i < n; ++i) f.r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= q * f.r[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
  };
  int t = 0;
  for (; t < std::min(m, n); ++t) {
    int bi = -1, bj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (at(i, j) != 0 && (bi < 0 || std::llabs(at(i, j)) < std::llabs(at(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi < 0) break;
    swap_rows(t, bi);
    swap_cols(t, bj);
    for (;;) {
      for (int i = t + 1; i < m; ++i)
        if (at(i, t) != 0) row_sub(i, t, at(i, t) / at(t, t));
      for (int j = t + 1; j < n; ++j)
        if (at(t, j) != 0) col_sub(j, t, at(t, j) / at(t, t));
      int ri = -1, cj = -1;
      for (int i = t + 1; i < m; ++i)
        if (at(i, t) != 0 && (ri < 0 || std::llabs(at(i, t)) < std::llabs(at(ri, t)))) ri = i;
      for (int j = t + 1; j < n; ++j)
        if (at(t, j) != 0 && (cj < 0 || std::llabs(at(t, j)) < std::llabs(at(t, cj)))) cj = j;
      if (ri < 0 && cj < 0) break;
      if (ri >= 0)
        swap_rows(t, ri);
      else
        swap_cols(t, cj);
    }
    if (at(t, t) < 0) {
      for (int j = 0; j < n; ++j) at(t, j) = -at(t, j);
      for (int j = 0; j < m; ++j) f.l[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] = -f.l[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
    }
  }
  f.rank = t;
  return f;
}

namespace {

std::optional<Rational> rational_root(const Rational& q, int s) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class rn, rd;
  if (!mpz_root(rn.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(s))) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(s))) return std::nullopt;
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

}  // namespace

std::vector<FieldElement> nth_roots(const FieldElement& rho, int s, int max_conductor) {
  if (s <= 0) throw std::invalid_argument("nth_roots: exponent must be positive");
  if (rho.is_zero()) return {FieldElement(0)};
  // rho = q * u with q > 0 rational and u a root of unity.
  const FieldElement norm = rho * rho.conj();
  if (!norm.is_rational()) return {};
  const auto q = rational_root(norm.rational(), 2);
  if (!q) return {};
  const FieldElement u = rho / FieldElement(*q);
  const int o = u.root_of_unity_order();
  if (o == 0) return {};
  const auto base = rational_root(*q, s);
  if (!base) return {};
  // u = zeta_o^a; the roots of z^s = u are zeta_{so}^(a + o t), t < s.
  int a = 0;
  while (!(FieldElement::zeta(o, a) == u)) ++a;
  const long long big = static_cast<long long>(s) * o;
  std::vector<FieldElement> out;
  for (int t = 0; t < s; ++t) {
    const long long j = a + static_cast<long long>(o) * t;
    const long long g = std::gcd(big, j);
    const long long order = big / g;
    const long long conductor = order % 4 == 2 ? order / 2 : order;
    if (conductor > max_conductor) continue;
    out.push_back(FieldElement::zeta(static_cast<int>(order), static_cast<int>(j / g)) * FieldElement(*base));
  }
  return out;
}

std::vector<ProjTransform> diagonal_lifts(const MultiPoly& f, const std::vector<int>& perm, int max_conductor) {
  const int n = f.nvars();
  if (static_cast<int>(perm.size()) != n) throw DimensionMismatch("diagonal_lifts: permutation size");
  const ProjTransform p = ProjTransform::permutation(perm);
  const MultiPoly g = substitute_linear(f, p.matrix());
  // g(D x) = lambda f(x): supports must agree.
  if (g.size() != f.size()) return {};
  for (const auto& [m, c] : f.terms())
    if (g.coeff(m).is_zero()) return {};
  // With d_0 = 1, for each monomial m: d^(m - m0) = (c_f(m) c_g(m0)) / (c_g(m) c_f(m0)).
  const Monomial m0 = f.lm();
  const FieldElement cf0 = f.lc(), cg0 = g.coeff(m0);
  std::vector<std::vector<long long>> a;
  Vec rhs;
  for (std::size_t k = 1; k < f.terms().size(); ++k) {
    const auto& [m, cf] = f.terms()[k];
    std::vector<long long> row;
    for (int i = 1; i < n; ++i) row.push_back(static_cast<long long>(m[i]) - m0[i]);
    a.push_back(row);
    rhs.push_back((cf * cg0) / (g.coeff(m) * cf0));
  }
  const int vars = n - 1;
  if (a.empty()) throw std::runtime_error("diagonal_lifts: torus of lifts is not finite");
  const SmithForm sf = smith_form(a);
  if (sf.rank < vars) throw std::runtime_error("diagonal_lifts: torus of lifts is not finite");
  // rho_j = prod_k rhs_k^L_jk.
  std::vector<FieldElement> rho;
  for (std::size_t j = 0; j < a.size(); ++j) {
    FieldElement v(1);
    for (std::size_t k = 0; k < a.size(); ++k)
      if (sf.l[j][k] != 0) v *= rhs[k].pow(sf.l[j][k]);
    rho.push_back(v);
  }
  for (std::size_t j = static_cast<std::size_t>(sf.rank); j < rho.size(); ++j)
    if (!rho[j].is_one()) return {};
  std::vector<std::vector<FieldElement>> cand;
  for (int j = 0; j < vars; ++j) {
    cand.push_back(nth_roots(rho[static_cast<std::size_t>(j)], static_cast<int>(sf.s[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)]), max_conductor));
    if (cand.back().empty()) return {};
  }
  std::vector<ProjTransform> out;
  std::vector<std::size_t> pick(static_cast<std::size_t>(vars), 0);
  for (;;) {
    Vec d{FieldElement(1)};
    for (int i = 0; i < vars; ++i) {
      FieldElement di(1);
      for (int j = 0; j < vars; ++j) {
        const long long e = sf.r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (e != 0) di *= cand[static_cast<std::size_t>(j)][pick[static_cast<std::size_t>(j)]].pow(e);
      }
      d.push_back(di);
    }
    const ProjTransform t(p.matrix() * Matrix::diagonal(d));
    if (preserves(t, f) && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    int k = 0;
    while (k < vars && ++pick[static_cast<std::size_t>(k)] == cand[static_cast<std::size_t>(k)].size()) pick[static_cast<std::size_t>(k++)] = 0;
    if (k == vars) break;
  }
  return out;
}

// -- DSL ----------------------------------------------------------------------

ProjPoint parse_point(const std::string& text, int conductor) {
  std::string s = text;
  const auto b = s.find('('), e = s.rfind(')');
  if (b == std::string::npos || e == std::string::npos || e < b) throw ParseError(ParseError::Kind::Syntax, 0, "point must be written (a:b:...)");
  s = s.substr(b + 1, e - b - 1);
  Vec v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) v.push_back(parse_scalar(item, conductor));
  return ProjPoint(v);
}

Vec linear_coefficients(const MultiPoly& f) {
  Vec v(static_cast<std::size_t>(f.nvars()), FieldElement(0));
  for (const auto& [m, c] : f.terms()) {
    if (m.deg != 1) throw std::invalid_argument("expected a linear form");
    for (int i = 0; i < f.nvars(); ++i)
      if (m[i]) v[static_cast<std::size_t>(i)] = c;
  }
  return v;
}

LinearSubspace parse_subspace(const std::string& text, int nvars, int conductor) {
  std::vector<Vec> forms;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) forms.push_back(linear_coefficients(parse_poly(item, {nvars, conductor})));
  return LinearSubspace::from_equations(nvars, forms);
}

}  // namespace cubaut
