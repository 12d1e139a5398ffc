#include "cubaut/ideal.hpp"

#include <algorithm>
#include <numeric>

namespace cubaut {

namespace {

MultiPoly make_monic(const MultiPoly& f) {
  if (f.is_zero() || f.lc().is_one()) return f;
  return f.scaled(f.lc().inverse());
}

// Full reduction of p by the polynomials in basis (all monic).
MultiPoly reduce(MultiPoly p, const std::vector<const MultiPoly*>& basis) {
  std::vector<MultiPoly::Term> rem;
  while (!p.is_zero()) {
    const Monomial m = p.lm();
    const MultiPoly* div = nullptr;
    for (const MultiPoly* g : basis)
      if (g->lm().divides(m)) {
        div = g;
        break;
      }
    if (div) {
      p -= div->mul_term(m / div->lm(), p.lc());
    } else {
      rem.push_back(p.terms().front());
      p = p.tail();
    }
  }
  return MultiPoly::from_sorted(p.nvars(), std::move(rem));
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  int sugar;
};

class Buchberger {
 public:
  Buchberger(int nvars, const GroebnerOptions& opts) : nvars_(nvars), opts_(opts) {}

  GroebnerBasis run(const Ideal& gens) {
    std::vector<MultiPoly> input;
    for (const auto& g : gens)
      if (!g.is_zero()) input.push_back(make_monic(g.with_nvars(nvars_)));
    // Process low degree first; deterministic for a fixed input order.
    std::stable_sort(input.begin(), input.end(),
                     [](const MultiPoly& a, const MultiPoly& b) { return grevlex_cmp(a.lm(), b.lm()) < 0; });
    for (auto& f : input) {
      MultiPoly h = make_monic(reduce(f, active_ptrs()));
      if (h.is_zero()) continue;
      insert(std::move(h), h_sugar(f));
      if (unit_found_) break;
    }
    while (!pairs_.empty() && !unit_found_) {
      const std::size_t k = select();
      const Pair pr = pairs_[k];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(k));
      if (++steps_ > opts_.budget) throw BudgetExceeded(opts_.budget);
      MultiPoly h = reduce(s_polynomial(polys_[pr.i], polys_[pr.j]), active_ptrs());
      if (h.is_zero()) continue;
      insert(make_monic(h), pr.sugar);
    }
    return finish();
  }

 private:
  static int h_sugar(const MultiPoly& f) { return f.total_degree(); }

  std::vector<const MultiPoly*> active_ptrs() const {
    std::vector<const MultiPoly*> out;
    for (std::size_t k = 0; k < polys_.size(); ++k)
      if (active_[k]) out.push_back(&polys_[k]);
    return out;
  }

  std::size_t select() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      const Pair& a = pairs_[k];
      const Pair& b = pairs_[best];
      if (a.sugar < b.sugar || (a.sugar == b.sugar && grevlex_cmp(a.lcm, b.lcm) < 0)) best = k;
    }
    return best;
  }

  Pair make_pair(std::size_t i, std::size_t j) const {
    const Monomial l = polys_[i].lm().lcm(polys_[j].lm());
    const int si = sugar_[i] + l.deg - polys_[i].lm().deg;
    const int sj = sugar_[j] + l.deg - polys_[j].lm().deg;
    return {i, j, l, std::max(si, sj)};
  }

  // Gebauer-Moeller update.
  void insert(MultiPoly h, int sugar) {
    if (h.is_constant()) unit_found_ = true;
    const std::size_t hi = polys_.size();
    polys_.push_back(std::move(h));
    sugar_.push_back(sugar);
    active_.push_back(true);
    const Monomial& lh = polys_[hi].lm();

    std::vector<Pair> c;
    for (std::size_t k = 0; k < hi; ++k)
      if (active_[k]) c.push_back(make_pair(k, hi));

    std::vector<Pair> d;
    for (std::size_t a = 0; a < c.size(); ++a) {
      const bool coprime = polys_[c[a].i].lm().coprime(lh);
      bool keep = true;
      if (!coprime) {
        for (std::size_t b = a + 1; b < c.size() && keep; ++b)
          if (c[b].lcm.divides(c[a].lcm)) keep = false;
        for (std::size_t b = 0; b < d.size() && keep; ++b)
          if (d[b].lcm.divides(c[a].lcm)) keep = false;
      }
      if (keep) d.push_back(c[a]);
    }
    std::vector<Pair> e;
    for (const auto& p : d)
      if (!polys_[p.i].lm().coprime(lh)) e.push_back(p);

    std::vector<Pair> kept;
    for (const auto& p : pairs_) {
      const bool drop = lh.divides(p.lcm) && !(polys_[p.i].lm().lcm(lh) == p.lcm) &&
                        !(polys_[p.j].lm().lcm(lh) == p.lcm);
      if (!drop) kept.push_back(p);
    }
    kept.insert(kept.end(), e.begin(), e.end());
    pairs_ = std::move(kept);

    for (std::size_t k = 0; k < hi; ++k)
      if (active_[k] && lh.divides(polys_[k].lm())) active_[k] = false;
  }

  GroebnerBasis finish() {
    GroebnerBasis g;
    g.nvars = nvars_;
    if (unit_found_) {
      g.elements.push_back(MultiPoly::constant(nvars_, FieldElement(1)));
      return g;
    }
    std::vector<MultiPoly> min;
    for (std::size_t k = 0; k < polys_.size(); ++k)
      if (active_[k]) min.push_back(polys_[k]);
    std::sort(min.begin(), min.end(), [](const MultiPoly& a, const MultiPoly& b) { return grevlex_cmp(a.lm(), b.lm()) < 0; });
    // Leading monomials are pairwise non-dividing; reduce tails.
    for (std::size_t k = 0; k < min.size(); ++k) {
      std::vector<const MultiPoly*> others;
      for (std::size_t l = 0; l < min.size(); ++l)
        if (l != k) others.push_back(&min[l]);
      const MultiPoly t = reduce(min[k].tail(), others);
      min[k] = MultiPoly::monomial(nvars_, min[k].lm(), FieldElement(1)) + t;
    }
    g.elements = std::move(min);
    return g;
  }

  int nvars_;
  const GroebnerOptions& opts_;
  std::vector<MultiPoly> polys_;
  std::vector<int> sugar_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
  std::size_t steps_ = 0;
  bool unit_found_ = false;
};

int ring_vars(const Ideal& gens) {
  int n = 0;
  for (const auto& g : gens) n = std::max(n, g.nvars());
  return n;
}

MultiPoly extend_var(const MultiPoly& f, int n) { return f.with_nvars(n); }

}  // namespace

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  for (const auto& e : elements) out.push_back(e.lm());
  return out;
}

GroebnerBasis groebner(const Ideal& gens, const GroebnerOptions& opts) {
  const int n = ring_vars(gens);
  GroebnerBasis g = Buchberger(n, opts).run(gens);
  if (opts.on_basis) opts.on_basis(g);
  return g;
}

MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& g) {
  std::vector<const MultiPoly*> basis;
  for (const auto& e : g.elements) basis.push_back(&e);
  return reduce(f, basis).with_nvars(std::max(f.nvars(), g.nvars));
}

bool ideal_member(const MultiPoly& f, const GroebnerBasis& g) { return normal_form(f, g).is_zero(); }

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g) {
  const Monomial l = f.lm().lcm(g.lm());
  return f.mul_term(l / f.lm(), g.lc()) - g.mul_term(l / g.lm(), f.lc());
}

std::optional<MultiPoly> failing_s_pair(const GroebnerBasis& g) {
  for (std::size_t i = 0; i < g.elements.size(); ++i)
    for (std::size_t j = i + 1; j < g.elements.size(); ++j) {
      const MultiPoly r = normal_form(s_polynomial(g.elements[i], g.elements[j]), g);
      if (!r.is_zero()) return r;
    }
  return std::nullopt;
}

bool radical_member(const MultiPoly& g, const Ideal& gens, const GroebnerOptions& opts) {
  const int n = std::max(ring_vars(gens), g.nvars());
  if (n + 1 > kMaxVars) throw std::invalid_argument("radical_member: no room for the auxiliary variable");
  Ideal ext;
  for (const auto& f : gens) ext.push_back(extend_var(f, n + 1));
  const MultiPoly t = MultiPoly::variable(n + 1, n);
  ext.push_back(MultiPoly::constant(n + 1, FieldElement(1)) - t * extend_var(g, n + 1));
  return groebner(ext, opts).is_unit();
}

bool radical_member_localized(const MultiPoly& g, const Ideal& gens, const MultiPoly& s,
                              const GroebnerOptions& opts) {
  const int n = std::max({ring_vars(gens), g.nvars(), s.nvars()});
  if (n + 2 > kMaxVars) throw std::invalid_argument("radical_member_localized: no room for auxiliary variables");
  Ideal ext;
  for (const auto& f : gens) ext.push_back(extend_var(f, n + 2));
  const MultiPoly one = MultiPoly::constant(n + 2, FieldElement(1));
  ext.push_back(one - MultiPoly::variable(n + 2, n) * extend_var(s, n + 2));
  ext.push_back(one - MultiPoly::variable(n + 2, n + 1) * extend_var(g, n + 2));
  return groebner(ext, opts).is_unit();
}

bool saturated_equal(const Ideal& i, const Ideal& j, const MultiPoly& s, const GroebnerOptions& opts) {
  for (const auto& g : j)
    if (!radical_member_localized(g, i, s, opts)) return false;
  for (const auto& g : i)
    if (!radical_member_localized(g, j, s, opts)) return false;
  return true;
}

namespace {

/// Groebner basis of I + <1 - t s> in one extra variable t.
GroebnerBasis saturation_basis(const Ideal& gens, const MultiPoly& s, int n, const GroebnerOptions& opts) {
  Ideal ext;
  for (const auto& f : gens) ext.push_back(extend_var(f, n + 1));
  ext.push_back(MultiPoly::constant(n + 1, FieldElement(1)) - MultiPoly::variable(n + 1, n) * extend_var(s, n + 1));
  return groebner(ext, opts);
}

}  // namespace

bool saturation_member(const MultiPoly& g, const Ideal& gens, const MultiPoly& s, const GroebnerOptions& opts) {
  const int n = std::max({ring_vars(gens), g.nvars(), s.nvars()});
  if (n + 1 > kMaxVars) throw std::invalid_argument("saturation_member: no room for the auxiliary variable");
  return ideal_member(extend_var(g, n + 1), saturation_basis(gens, s, n, opts));
}

std::optional<MultiPoly> saturated_ideals_differ(const Ideal& i, const Ideal& j, const MultiPoly& s,
                                                 const GroebnerOptions& opts) {
  const int n = std::max({ring_vars(i), ring_vars(j), s.nvars()});
  if (n + 1 > kMaxVars) throw std::invalid_argument("saturated_ideals_differ: no room for the auxiliary variable");
  const GroebnerBasis gi = saturation_basis(i, s, n, opts), gj = saturation_basis(j, s, n, opts);
  for (const auto& g : j)
    if (!ideal_member(extend_var(g, n + 1), gi)) return g;
  for (const auto& g : i)
    if (!ideal_member(extend_var(g, n + 1), gj)) return g;
  return std::nullopt;
}

// -- Hilbert series -----------------------------------------------------------

namespace {

using Series = std::vector<long long>;

void add_into(Series& a, const Series& b, long long sign, int shift) {
  if (a.size() < b.size() + static_cast<std::size_t>(shift)) a.resize(b.size() + static_cast<std::size_t>(shift), 0);
  for (std::size_t k = 0; k < b.size(); ++k) a[k + static_cast<std::size_t>(shift)] += sign * b[k];
}

std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) { return a.deg < b.deg; });
  std::vector<Monomial> out;
  for (const auto& m : gens) {
    bool redundant = false;
    for (const auto& o : out)
      if (o.divides(m)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(m);
  }
  return out;
}

int support_size(const Monomial& m) {
  int s = 0;
  for (auto x : m.e) s += x > 0;
  return s;
}

Series numerator(std::vector<Monomial> gens) {
  gens = minimalize(std::move(gens));
  if (gens.empty()) return {1};
  for (const auto& g : gens)
    if (g.deg == 0) return {0};
  // Base case: pairwise coprime generators.
  bool coprime = true;
  for (std::size_t a = 0; a < gens.size() && coprime; ++a)
    for (std::size_t b = a + 1; b < gens.size() && coprime; ++b)
      if (!gens[a].coprime(gens[b])) coprime = false;
  if (coprime) {
    Series s{1};
    for (const auto& g : gens) {
      Series t = s;
      add_into(t, s, -1, g.deg);
      s = std::move(t);
    }
    return s;
  }
  // Pivot on the variable occurring in the most non-pure generators.
  std::array<int, kMaxVars> count{};
  for (const auto& g : gens)
    if (support_size(g) > 1)
      for (int i = 0; i < kMaxVars; ++i) count[static_cast<std::size_t>(i)] += g[i] > 0;
  const int x = static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
  std::vector<int> exps;
  for (const auto& g : gens)
    if (g[x] > 0 && support_size(g) > 1) exps.push_back(g[x]);
  std::sort(exps.begin(), exps.end());
  const Monomial p = Monomial::var(x, exps[exps.size() / 2]);
  // N(I) = N(I + <p>) + t^deg(p) N(I : p)
  std::vector<Monomial> plus = gens;
  plus.push_back(p);
  std::vector<Monomial> colon;
  for (const auto& g : gens) colon.push_back(g.lcm(p) / p);
  Series s = numerator(plus);
  add_into(s, numerator(colon), 1, p.deg);
  while (s.size() > 1 && s.back() == 0) s.pop_back();
  return s;
}

}  // namespace

std::vector<long long> hilbert_numerator(const std::vector<Monomial>& gens) { return numerator(gens); }

DimDegree proj_dim_degree(const GroebnerBasis& g) {
  DimDegree out;
  if (g.is_unit()) return out;
  Series s = numerator(g.leading_monomials());
  int k = 0;
  for (;;) {
    long long at_one = 0;
    for (auto c : s) at_one += c;
    if (at_one != 0) {
      const int krull = g.nvars - k;
      if (krull <= 0) return out;
      out.dimension = krull - 1;
      out.degree = at_one;
      return out;
    }
    Series q(s.size() > 1 ? s.size() - 1 : 1, 0);
    long long acc = 0;
    for (std::size_t j = 0; j + 1 < s.size(); ++j) {
      acc += s[j];
      q[j] = acc;
    }
    s = std::move(q);
    ++k;
  }
}

DimDegree proj_dim_degree(const Ideal& gens, const GroebnerOptions& opts) {
  for (const auto& f : gens)
    if (!f.is_homogeneous()) throw std::invalid_argument("proj_dim_degree: generators must be homogeneous");
  return proj_dim_degree(groebner(gens, opts));
}

namespace {

// Standard monomials below a box, or nullopt if the quotient is infinite.
std::optional<std::vector<Monomial>> standard_monomials(const GroebnerBasis& g) {
  if (g.is_unit()) return std::vector<Monomial>{};
  const auto lms = g.leading_monomials();
  std::vector<int> bound(static_cast<std::size_t>(g.nvars), -1);
  for (const auto& m : lms)
    if (support_size(m) == 1)
      for (int i = 0; i < g.nvars; ++i)
        if (m[i] > 0 && (bound[static_cast<std::size_t>(i)] < 0 || m[i] < bound[static_cast<std::size_t>(i)]))
          bound[static_cast<std::size_t>(i)] = m[i];
  for (int b : bound)
    if (b < 0) return std::nullopt;
  std::vector<Monomial> out;
  std::vector<int> e(static_cast<std::size_t>(g.nvars), 0);
  for (;;) {
    const Monomial m = Monomial::from_exponents(e);
    bool standard = true;
    for (const auto& l : lms)
      if (l.divides(m)) {
        standard = false;
        break;
      }
    if (standard) out.push_back(m);
    int i = 0;
    while (i < g.nvars && ++e[static_cast<std::size_t>(i)] >= bound[static_cast<std::size_t>(i)]) e[static_cast<std::size_t>(i++)] = 0;
    if (i == g.nvars) break;
  }
  return out;
}

}  // namespace

std::optional<long long> quotient_dimension(const GroebnerBasis& g) {
  const auto sm = standard_monomials(g);
  if (!sm) return std::nullopt;
  return static_cast<long long>(sm->size());
}

MultiPoly translate(const MultiPoly& f, const Vec& p) {
  const int n = f.nvars();
  std::vector<MultiPoly> images;
  for (int i = 0; i < n; ++i)
    images.push_back(MultiPoly::variable(n, i) + MultiPoly::constant(n, p[static_cast<std::size_t>(i)]));
  return substitute_vars(f, images);
}

int local_multiplicity(const Ideal& gens, const Vec& point, const GroebnerOptions& opts, int max_order) {
  const int n = static_cast<int>(point.size());
  Ideal shifted;
  for (const auto& f : gens) {
    const MultiPoly g = translate(f.with_nvars(n), point);
    if (!g.is_zero() && g.coeff(Monomial::one()) != FieldElement(0))
      throw std::invalid_argument("local_multiplicity: point is not a zero of the ideal");
    shifted.push_back(g);
  }
  std::vector<Monomial> power{Monomial::one()};  // monomials of degree N
  long long prev = -1;
  for (int order = 1; order <= max_order; ++order) {
    std::vector<Monomial> next;
    for (const auto& m : power)
      for (int i = 0; i < n; ++i) {
        bool leading = true;  // generate each monomial once: only multiply by x_i >= last variable
        for (int j = i + 1; j < n; ++j)
          if (m[j] > 0) leading = false;
        if (leading) next.push_back(m * Monomial::var(i));
      }
    power = std::move(next);
    Ideal aug = shifted;
    for (const auto& m : power) aug.push_back(MultiPoly::monomial(n, m, FieldElement(1)));
    const auto dim = quotient_dimension(groebner(aug, opts));
    if (dim && *dim == prev) return static_cast<int>(prev);
    prev = dim ? *dim : -1;
  }
  throw NonIsolatedPoint("local multiplicity did not stabilize; the point is not isolated");
}

std::vector<FieldElement> univariate_eliminant(const GroebnerBasis& g, int var) {
  const auto sm = standard_monomials(g);
  if (!sm) throw std::invalid_argument("univariate_eliminant: ideal is not zero-dimensional");
  if (sm->empty()) return {FieldElement(1)};
  auto as_vector = [&](const MultiPoly& r) {
    Vec v(sm->size());
    for (std::size_t k = 0; k < sm->size(); ++k) v[k] = r.coeff((*sm)[k]);
    return v;
  };
  std::vector<Vec> cols;
  MultiPoly power = MultiPoly::constant(g.nvars, FieldElement(1));
  for (std::size_t d = 0; d <= sm->size(); ++d) {
    const Vec v = as_vector(normal_form(power, g));
    if (!cols.empty()) {
      const auto sol = Matrix::from_columns(cols).solve(v);
      if (sol) {
        std::vector<FieldElement> poly;
        for (const auto& c : *sol) poly.push_back(-c);
        poly.push_back(FieldElement(1));
        return poly;
      }
    } else if (is_zero_vec(v)) {
      return {FieldElement(1)};
    }
    cols.push_back(v);
    power = normal_form(power * MultiPoly::variable(g.nvars, var), g);
  }
  throw std::logic_error("univariate_eliminant: no relation found");
}

}  // namespace cubaut
