#ifndef CUBAUT_POLY_HPP
#define CUBAUT_POLY_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cubaut/field.hpp"
#include "cubaut/linalg.hpp"

namespace cubaut {

inline constexpr int kMaxVars = 12;

struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};
  std::uint16_t deg = 0;

  static Monomial one() { return {}; }
  static Monomial var(int i, int power = 1) {
    Monomial m;
    m.e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(power);
    m.deg = static_cast<std::uint16_t>(power);
    return m;
  }
  static Monomial from_exponents(const std::vector<int>& ex);

  int operator[](int i) const { return e[static_cast<std::size_t>(i)]; }
  Monomial operator*(const Monomial& b) const {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) m.e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e[static_cast<std::size_t>(i)] + b.e[static_cast<std::size_t>(i)]);
    m.deg = static_cast<std::uint16_t>(deg + b.deg);
    return m;
  }
  /// Exact quotient; requires b | *this.
  Monomial operator/(const Monomial& b) const {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) m.e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e[static_cast<std::size_t>(i)] - b.e[static_cast<std::size_t>(i)]);
    m.deg = static_cast<std::uint16_t>(deg - b.deg);
    return m;
  }
  bool divides(const Monomial& b) const {
    if (deg > b.deg) return false;
    for (int i = 0; i < kMaxVars; ++i)
      if (e[static_cast<std::size_t>(i)] > b.e[static_cast<std::size_t>(i)]) return false;
    return true;
  }
  Monomial lcm(const Monomial& b) const {
    Monomial m;
    int d = 0;
    for (int i = 0; i < kMaxVars; ++i) {
      m.e[static_cast<std::size_t>(i)] = std::max(e[static_cast<std::size_t>(i)], b.e[static_cast<std::size_t>(i)]);
      d += m.e[static_cast<std::size_t>(i)];
    }
    m.deg = static_cast<std::uint16_t>(d);
    return m;
  }
  bool coprime(const Monomial& b) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (e[static_cast<std::size_t>(i)] && b.e[static_cast<std::size_t>(i)]) return false;
    return true;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  std::size_t hash() const {
    std::size_t h = 0;
    for (auto x : e) h = h * 131 + x;
    return h;
  }
  std::string to_string(const std::vector<std::string>& names) const;
};

/// Graded reverse lexicographic comparison with x0 > x1 > ... .
/// Returns negative, zero or positive.
inline int grevlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
  for (int i = kMaxVars - 1; i >= 0; --i) {
    const int d = static_cast<int>(a.e[static_cast<std::size_t>(i)]) - static_cast<int>(b.e[static_cast<std::size_t>(i)]);
    if (d != 0) return d < 0 ? 1 : -1;
  }
  return 0;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

std::vector<std::string> default_names(int nvars, const std::string& stem = "x");

/// Sparse polynomial with coefficients in R, terms kept sorted by decreasing
/// grevlex order with no zero coefficients.
///
/// R is FieldElement for ordinary forms, or Poly<FieldElement> itself for
/// forms whose coefficients are polynomials in parameters.
template <class R>
class Poly {
 public:
  using Term = std::pair<Monomial, R>;

  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {
    if (nvars < 0 || nvars > kMaxVars) throw std::invalid_argument("variable count out of range");
  }
  static Poly constant(int nvars, R c) {
    Poly p(nvars);
    if (!is_zero_coeff(c)) p.terms_.emplace_back(Monomial::one(), std::move(c));
    return p;
  }
  static Poly variable(int nvars, int i) {
    Poly p(nvars);
    p.terms_.emplace_back(Monomial::var(i), unit_coeff());
    return p;
  }
  static Poly monomial(int nvars, const Monomial& m, R c) {
    Poly p(nvars);
    if (!is_zero_coeff(c)) p.terms_.emplace_back(m, std::move(c));
    return p;
  }
  /// Builds from unsorted terms, merging duplicates.
  static Poly from_terms(int nvars, std::vector<Term> terms) {
    Poly p(nvars);
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return grevlex_cmp(a.first, b.first) > 0; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second += t.second;
        if (is_zero_coeff(p.terms_.back().second)) p.terms_.pop_back();
      } else if (!is_zero_coeff(t.second)) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  /// Terms must already be sorted by decreasing grevlex order with no zeros.
  static Poly from_sorted(int nvars, std::vector<Term> terms) {
    Poly p(nvars);
    p.terms_ = std::move(terms);
    return p;
  }
  /// All terms but the leading one.
  Poly tail() const {
    Poly p(nvars_);
    if (!terms_.empty()) p.terms_.assign(terms_.begin() + 1, terms_.end());
    return p;
  }

  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.deg == 0); }
  const Monomial& lm() const { return terms_.front().first; }
  const R& lc() const { return terms_.front().second; }
  int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.first.deg));
    return d;
  }
  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.first.deg != terms_.front().first.deg) return false;
    return true;
  }
  /// Coefficient of m (zero when absent).
  R coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& x) { return grevlex_cmp(t.first, x) > 0; });
    if (it != terms_.end() && it->first == m) return it->second;
    return zero_coeff();
  }

  /// Same polynomial in a ring with more (or equally many) variables.
  Poly with_nvars(int n) const {
    Poly p = *this;
    p.nvars_ = n;
    return p;
  }

  Poly operator-() const {
    Poly p = *this;
    for (auto& t : p.terms_) t.second = -t.second;
    return p;
  }
  Poly& operator+=(const Poly& b) { return *this = merge(*this, b, false); }
  Poly& operator-=(const Poly& b) { return *this = merge(*this, b, true); }
  friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(std::max(a.nvars_, b.nvars_));
    std::unordered_map<Monomial, R, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        auto [it, inserted] = acc.try_emplace(ma * mb, ca * cb);
        if (!inserted) it->second += ca * cb;
      }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& kv : acc)
      if (!is_zero_coeff(kv.second)) terms.emplace_back(kv.first, std::move(kv.second));
    Poly p(std::max(a.nvars_, b.nvars_));
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return grevlex_cmp(x.first, y.first) > 0; });
    p.terms_ = std::move(terms);
    return p;
  }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  /// Multiplies every coefficient by s (from the right).
  template <class S>
  Poly scaled(const S& s) const {
    Poly p(nvars_);
    for (const auto& [m, c] : terms_) {
      R v = c * s;
      if (!is_zero_coeff(v)) p.terms_.emplace_back(m, std::move(v));
    }
    return p;
  }
  Poly mul_term(const Monomial& m, const R& c) const {
    Poly p(nvars_);
    p.terms_.reserve(terms_.size());
    for (const auto& [tm, tc] : terms_) {
      R v = tc * c;
      if (!is_zero_coeff(v)) p.terms_.emplace_back(tm * m, std::move(v));
    }
    return p;
  }
  Poly pow(int k) const {
    Poly r = constant(nvars_, unit_coeff());
    for (int i = 0; i < k; ++i) r *= *this;
    return r;
  }

  /// Partial derivative with respect to x_i.
  Poly derivative(int i) const {
    std::vector<Term> out;
    for (const auto& [m, c] : terms_) {
      const int ei = m[i];
      if (ei == 0) continue;
      Monomial d = m;
      d.e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(ei - 1);
      d.deg = static_cast<std::uint16_t>(d.deg - 1);
      R v = c * FieldElement(ei);
      if (!is_zero_coeff(v)) out.emplace_back(d, std::move(v));
    }
    Poly p(nvars_);
    p.terms_ = std::move(out);  // derivative of sorted terms stays sorted
    std::sort(p.terms_.begin(), p.terms_.end(), [](const Term& x, const Term& y) { return grevlex_cmp(x.first, y.first) > 0; });
    return p;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].first == b.terms_[i].first) || !(a.terms_[i].second == b.terms_[i].second)) return false;
    return true;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const;

  // Coefficient helpers usable for R = FieldElement and R = Poly<FieldElement>.
  static bool is_zero_coeff(const R& c);
  static R zero_coeff();
  static R unit_coeff();

 private:
  static Poly merge(const Poly& a, const Poly& b, bool subtract) {
    Poly r(std::max(a.nvars_, b.nvars_));
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == a.terms_.size())
        c = -1;
      else if (j == b.terms_.size())
        c = 1;
      else
        c = grevlex_cmp(a.terms_[i].first, b.terms_[j].first);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.emplace_back(b.terms_[j].first, subtract ? -b.terms_[j].second : b.terms_[j].second);
        ++j;
      } else {
        R v = subtract ? a.terms_[i].second - b.terms_[j].second : a.terms_[i].second + b.terms_[j].second;
        if (!is_zero_coeff(v)) r.terms_.emplace_back(a.terms_[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return r;
  }

  int nvars_ = 0;
  std::vector<Term> terms_;
};

/// Polynomial over a field (Q or a cyclotomic field).
using MultiPoly = Poly<FieldElement>;
/// Polynomial in parameter indeterminates with rational coefficients.
using ParamCoefficient = MultiPoly;
/// Form whose coefficients are parameter polynomials.
using ParamPoly = Poly<ParamCoefficient>;

template <>
inline bool Poly<FieldElement>::is_zero_coeff(const FieldElement& c) { return c.is_zero(); }
template <>
inline FieldElement Poly<FieldElement>::zero_coeff() { return FieldElement(0); }
template <>
inline FieldElement Poly<FieldElement>::unit_coeff() { return FieldElement(1); }
template <>
inline bool Poly<MultiPoly>::is_zero_coeff(const MultiPoly& c) { return c.is_zero(); }
template <>
inline MultiPoly Poly<MultiPoly>::zero_coeff() { return MultiPoly(); }
template <>
inline MultiPoly Poly<MultiPoly>::unit_coeff() { return MultiPoly::constant(0, FieldElement(1)); }

inline MultiPoly operator*(const MultiPoly& p, const FieldElement& s) { return p.scaled(s); }

/// Text rendering of a field polynomial in DSL syntax.
template <>
std::string Poly<FieldElement>::to_string(const std::vector<std::string>& names) const;
template <>
std::string Poly<MultiPoly>::to_string(const std::vector<std::string>& names) const;
std::string param_poly_to_string(const ParamPoly& f, const std::vector<std::string>& param_names,
                                 const std::vector<std::string>& var_names = {});

// -- operations ---------------------------------------------------------------

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// f(T x): every x_i is replaced by sum_j T(i,j) x_j.
template <class R>
Poly<R> substitute_linear(const Poly<R>& f, const Matrix& t);

/// Vector of partial derivatives in variable order.
template <class R>
std::vector<Poly<R>> gradient(const Poly<R>& f) {
  std::vector<Poly<R>> g;
  g.reserve(static_cast<std::size_t>(f.nvars()));
  for (int i = 0; i < f.nvars(); ++i) g.push_back(f.derivative(i));
  return g;
}

FieldElement evaluate(const MultiPoly& f, const Vec& point);

/// Evaluates the parameter coefficients at a parameter point.
MultiPoly specialize(const ParamPoly& f, const Vec& params);

/// Treats a field polynomial as a parametric one with constant coefficients.
ParamPoly lift_constant(const MultiPoly& f, int nparams);

/// Substitutes parameter polynomials for the parameters of f (parameter-ring
/// homomorphism), e.g. C -> -A-B-D.
ParamPoly substitute_params(const ParamPoly& f, const std::vector<MultiPoly>& images);
MultiPoly substitute_vars(const MultiPoly& f, const std::vector<MultiPoly>& images);

/// lambda with g = lambda f if it exists; (0,0) gives 1.
std::optional<FieldElement> proportionality(const MultiPoly& f, const MultiPoly& g);

/// All nonzero 2x2 minors f_a g_b - f_b g_a over the union of supports.
/// Their common vanishing is projective proportionality wherever f != 0.
template <class R>
std::vector<R> coefficient_conditions(const Poly<R>& f, const Poly<R>& g);

/// Restriction of f to the linear subspace spanned by the columns of basis:
/// f(sum_k t_k b_k) as a polynomial in t.
MultiPoly restrict_to_span(const MultiPoly& f, const std::vector<Vec>& basis);

/// Eliminates x_k using the linear relation sum c_i x_i = 0 (c_k != 0) and
/// returns the form in the remaining variables, renumbered in order.
MultiPoly eliminate_variable(const MultiPoly& f, const Vec& relation, int k);

// -- DSL --------------------------------------------------------------------

struct ParseContext {
  int nvars = 5;
  /// Conductor of the ambient field; literals w, i, z5 require 3, 4, 5 | conductor.
  int conductor = 1;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownVariable, WrongField };
  ParseError(Kind k, std::size_t pos, const std::string& msg)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), kind(k), position(pos) {}
  Kind kind;
  std::size_t position;
};

MultiPoly parse_poly(const std::string& text, const ParseContext& ctx);
/// Parses a scalar literal expression (no variables).
FieldElement parse_scalar(const std::string& text, int conductor = 60);
/// Smallest conductor compatible with the literals used in text.
int required_conductor(const std::string& text);

}  // namespace cubaut

#endif  // CUBAUT_POLY_HPP
