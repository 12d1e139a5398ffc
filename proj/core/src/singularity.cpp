#include "cubaut/singularity.hpp"

#include <algorithm>
#include <functional>

namespace cubaut {

namespace {

std::vector<Monomial> monomials_of_degree(int n, int d) {
  std::vector<Monomial> out;
  std::vector<int> ex(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      ex[static_cast<std::size_t>(i)] = left;
      out.push_back(Monomial::from_exponents(ex));
      return;
    }
    for (int k = left; k >= 0; --k) {
      ex[static_cast<std::size_t>(i)] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, d);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) > 0; });
  return out;
}

FieldElement eval_monomial(const Monomial& m, const Vec& p) {
  FieldElement r(1);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (m[static_cast<int>(i)] > 0) r *= p[i].pow(m[static_cast<int>(i)]);
  return r;
}

Vec coefficient_vector(const MultiPoly& f, const std::vector<Monomial>& basis) {
  Vec v;
  v.reserve(basis.size());
  for (const auto& m : basis) v.push_back(f.coeff(m));
  return v;
}

MultiPoly truncate(const MultiPoly& f, int degree) {
  std::vector<MultiPoly::Term> t;
  for (const auto& term : f.terms())
    if (term.first.deg <= degree) t.push_back(term);
  return MultiPoly::from_sorted(f.nvars(), std::move(t));
}

int lowest_degree(const MultiPoly& f) {
  int d = -1;
  for (const auto& [m, c] : f.terms())
    if (d < 0 || m.deg < d) d = m.deg;
  return d;
}

}  // namespace

std::vector<MultiPoly> vanishing_ideal(const std::vector<ProjPoint>& claimed) {
  if (claimed.empty()) throw std::invalid_argument("vanishing_ideal: no points");
  std::vector<ProjPoint> points;
  for (const auto& q : claimed)
    if (std::find(points.begin(), points.end(), q) == points.end()) points.push_back(q);
  const int n = points[0].size();
  const int count = static_cast<int>(points.size());
  std::vector<MultiPoly> gens;
  int stop = -1;
  for (int d = 1; stop < 0 || d <= stop; ++d) {
    const auto monos = monomials_of_degree(n, d);
    Matrix e(count, static_cast<int>(monos.size()));
    for (int i = 0; i < count; ++i)
      for (std::size_t j = 0; j < monos.size(); ++j)
        e(i, static_cast<int>(j)) = eval_monomial(monos[j], points[static_cast<std::size_t>(i)].coords());
    if (stop < 0 && e.rank() == count) stop = d + 1;
    std::vector<Vec> generated;
    for (const auto& g : gens) {
      const int rest = d - g.total_degree();
      for (const auto& m : monomials_of_degree(n, rest))
        generated.push_back(coefficient_vector(g.mul_term(m, FieldElement(1)), monos));
    }
    std::vector<Vec> span = row_basis(generated);
    for (const auto& k : e.nullspace()) {
      auto trial = span;
      trial.push_back(k);
      if (rank_of(trial) == static_cast<int>(span.size())) continue;
      span = row_basis(trial);
      std::vector<MultiPoly::Term> terms;
      for (std::size_t j = 0; j < monos.size(); ++j)
        if (!k[j].is_zero()) terms.emplace_back(monos[j], k[j]);
      gens.push_back(MultiPoly::from_terms(n, std::move(terms)));
    }
  }
  return gens;
}

bool SingularLocusCertificate::sound() const {
  return std::all_of(soundness.begin(), soundness.end(),
                     [](const PointCheck& c) { return c.on_variety && c.gradient_vanishes; });
}

bool SingularLocusCertificate::complete() const {
  return std::all_of(completeness.begin(), completeness.end(), [](const MembershipCheck& c) { return c.in_radical; });
}

std::vector<int> SingularLocusCertificate::smooth_points() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < soundness.size(); ++i)
    if (!soundness[i].on_variety || !soundness[i].gradient_vanishes) out.push_back(static_cast<int>(i));
  return out;
}

std::string SingularLocusCertificate::failure() const {
  if (!distinct) return "claimed points are not distinct";
  if (!sound()) {
    std::string s = "claimed point is not singular:";
    for (int i : smooth_points()) s += " " + soundness[static_cast<std::size_t>(i)].point.to_string();
    return s;
  }
  if (!zero_dimensional()) return "singular locus has positive dimension";
  if (!complete()) {
    for (const auto& c : completeness)
      if (!c.in_radical) return "singular locus escapes the claimed set: " + c.generator.to_string() + " not in the radical";
  }
  return "";
}

SingularLocusCertificate certify_singular_locus(const MultiPoly& f, const std::vector<ProjPoint>& claimed,
                                                const GroebnerOptions& opts) {
  SingularLocusCertificate cert;
  const auto grad = gradient(f);
  for (std::size_t i = 0; i < claimed.size(); ++i)
    for (std::size_t j = i + 1; j < claimed.size(); ++j)
      if (claimed[i] == claimed[j]) cert.distinct = false;
  for (const auto& p : claimed) {
    PointCheck c{p, evaluate(f, p.coords()).is_zero(), true};
    for (const auto& g : grad)
      if (!evaluate(g, p.coords()).is_zero()) c.gradient_vanishes = false;
    cert.soundness.push_back(c);
  }
  cert.jacobian = proj_dim_degree(grad, opts);
  if (claimed.empty()) {
    // empty locus: the irrelevant ideal must lie in the radical
    for (int i = 0; i < f.nvars(); ++i) {
      MultiPoly x = MultiPoly::variable(f.nvars(), i);
      cert.completeness.push_back({x, radical_member(x, grad, opts)});
    }
    return cert;
  }
  for (const auto& g : vanishing_ideal(claimed)) cert.completeness.push_back({g, radical_member(g, grad, opts)});
  return cert;
}

std::string SingularityReport::label() const {
  switch (type) {
    case SingularityType::A1:
      return "A1";
    case SingularityType::CAk:
      return "cA" + std::to_string(k) + "-class";
    case SingularityType::Other:
      return "other(corank " + std::to_string(corank) + ", order " + std::to_string(vanishing_order) + ")";
  }
  return "";
}

MultiPoly local_equation(const MultiPoly& f, const ProjPoint& p, int* chart) {
  const int n = f.nvars();
  int c = 0;
  while (p[c].is_zero()) ++c;
  if (chart) *chart = c;
  std::vector<MultiPoly> images;
  Vec affine;
  for (int i = 0, j = 0; i < n; ++i) {
    if (i == c) {
      images.push_back(MultiPoly::constant(n - 1, FieldElement(1)));
    } else {
      images.push_back(MultiPoly::variable(n - 1, j++));
      affine.push_back(p[i] / p[c]);
    }
  }
  return translate(substitute_vars(f, images), affine);
}

namespace {

// Order of g along the kernel line after eliminating the nondegenerate block.
int corank_one_order(const MultiPoly& g, const Matrix& hessian, int budget) {
  const int n = g.nvars();
  auto ker = hessian.nullspace();
  std::vector<Vec> cols;
  for (int i = 0; i < n && static_cast<int>(cols.size()) < n - 1; ++i) {
    Vec e(static_cast<std::size_t>(n));
    e[static_cast<std::size_t>(i)] = 1;
    auto trial = cols;
    trial.push_back(e);
    auto with_ker = trial;
    with_ker.push_back(ker[0]);
    if (rank_of(with_ker) == static_cast<int>(with_ker.size())) cols = trial;
  }
  cols.push_back(ker[0]);
  const MultiPoly h = substitute_linear(g, Matrix::from_columns(cols));
  const int m = n - 1;
  Matrix a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Monomial mono = Monomial::var(i) * Monomial::var(j);
      a(i, j) = h.coeff(mono) * FieldElement(i == j ? 2 : 1);
    }
  const Matrix ainv = *a.inverse();
  std::vector<MultiPoly> grad;
  for (int i = 0; i < m; ++i) grad.push_back(h.derivative(i));
  const MultiPoly t = MultiPoly::variable(n, m);
  std::vector<MultiPoly> phi(static_cast<std::size_t>(m), MultiPoly(n));
  for (int it = 0; it < budget; ++it) {
    std::vector<MultiPoly> images = phi;
    images.push_back(t);
    std::vector<MultiPoly> rest;
    for (int i = 0; i < m; ++i) {
      MultiPoly r = truncate(substitute_vars(grad[static_cast<std::size_t>(i)], images), budget + 1);
      for (int j = 0; j < m; ++j) r -= phi[static_cast<std::size_t>(j)].scaled(a(i, j));
      rest.push_back(r);
    }
    for (int i = 0; i < m; ++i) {
      MultiPoly v(n);
      for (int j = 0; j < m; ++j) v -= rest[static_cast<std::size_t>(j)].scaled(ainv(i, j));
      phi[static_cast<std::size_t>(i)] = truncate(v, budget + 1);
    }
  }
  std::vector<MultiPoly> images = phi;
  images.push_back(t);
  const MultiPoly restricted = truncate(substitute_vars(h, images), budget);
  if (restricted.is_zero()) throw DegreeBudgetExhausted("no finite order along the kernel line within the degree budget");
  return lowest_degree(restricted);
}

}  // namespace

SingularityReport classify_singularity(const MultiPoly& f, const ProjPoint& p, const ClassifyOptions& opts) {
  SingularityReport r;
  r.point = p;
  const MultiPoly g = local_equation(f, p, &r.chart);
  const int n = g.nvars();
  const Vec origin(static_cast<std::size_t>(n));
  if (!evaluate(g, origin).is_zero()) throw std::invalid_argument("point is not on the variety");
  for (const auto& d : gradient(g))
    if (!evaluate(d, origin).is_zero()) throw std::invalid_argument("point is not singular");

  Matrix h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      h(i, j) = g.coeff(Monomial::var(i) * Monomial::var(j)) * FieldElement(i == j ? 2 : 1);
  r.hessian_rank = h.rank();
  r.corank = n - r.hessian_rank;
  r.vanishing_order = lowest_degree(g);
  try {
    r.mu = local_multiplicity(gradient(g), origin, opts.groebner);
  } catch (const NonIsolatedPoint&) {
    throw DegreeBudgetExhausted("singular point is not isolated");
  }
  if (r.corank == 0) {
    r.type = SingularityType::A1;
  } else if (r.corank == 1) {
    r.type = SingularityType::CAk;
    r.k = corank_one_order(g, h, opts.series_degree) - 1;
  } else {
    r.type = SingularityType::Other;
  }

  static const long kSlices[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::optional<int> previous;
  long previous_t = 0;
  const int tries = std::min<int>(opts.max_slices, static_cast<int>(std::size(kSlices)));
  for (int s = 0; s < tries; ++s) {
    const long t = kSlices[s];
    Vec a;
    FieldElement c(1);
    for (int i = 0; i < n; ++i, c *= FieldElement(t)) a.push_back(c);
    const MultiPoly slice = eliminate_variable(g, a, 0);
    std::optional<int> mu;
    try {
      mu = local_multiplicity(gradient(slice), Vec(static_cast<std::size_t>(n - 1)), opts.groebner);
    } catch (const NonIsolatedPoint&) {
    }
    if (mu && previous && *mu == *previous) {
      r.mu_section = *mu;
      r.slice_parameter = previous_t;
      return r;
    }
    previous = mu;
    previous_t = t;
  }
  throw DegreeBudgetExhausted("hyperplane section Milnor number did not stabilize");
}

DualDegreeBudget dual_degree_budget(const std::vector<SingularityReport>& reports) {
  DualDegreeBudget b;
  for (const auto& r : reports) b.value -= r.m();
  return b;
}

}  // namespace cubaut
