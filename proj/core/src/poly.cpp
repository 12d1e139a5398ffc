#include "cubaut/poly.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace cubaut {

Monomial Monomial::from_exponents(const std::vector<int>& ex) {
  if (ex.size() > static_cast<std::size_t>(kMaxVars)) throw std::invalid_argument("too many exponents");
  Monomial m;
  int d = 0;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    if (ex[i] < 0 || ex[i] > 255) throw std::invalid_argument("exponent out of range");
    m.e[i] = static_cast<std::uint8_t>(ex[i]);
    d += ex[i];
  }
  m.deg = static_cast<std::uint16_t>(d);
  return m;
}

std::string Monomial::to_string(const std::vector<std::string>& names) const {
  std::string s;
  for (int i = 0; i < kMaxVars; ++i) {
    const int k = e[static_cast<std::size_t>(i)];
    if (k == 0) continue;
    if (!s.empty()) s += "*";
    s += i < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(i)] : "x" + std::to_string(i);
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s.empty() ? "1" : s;
}

std::vector<std::string> default_names(int nvars, const std::string& stem) {
  std::vector<std::string> n;
  for (int i = 0; i < nvars; ++i) n.push_back(stem + std::to_string(i));
  return n;
}

namespace {

// Splits a coefficient string into sign and magnitude for term printing.
std::string render_terms(const std::vector<std::pair<std::string, std::string>>& terms) {
  // terms: (coefficient text, monomial text or "1")
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [c, m] : terms) {
    std::string coef = c;
    bool neg = false;
    const bool compound = coef.find_first_of("+-", 1) != std::string::npos;
    if (!compound && !coef.empty() && coef[0] == '-') {
      neg = true;
      coef = coef.substr(1);
    }
    if (compound) coef = "(" + coef + ")";
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    if (m == "1")
      out += coef;
    else if (coef == "1")
      out += m;
    else
      out += coef + "*" + m;
  }
  return out;
}

template <class R>
R coeff_from_field(const FieldElement& x);
template <>
FieldElement coeff_from_field<FieldElement>(const FieldElement& x) {
  return x;
}
template <>
MultiPoly coeff_from_field<MultiPoly>(const FieldElement& x) {
  return MultiPoly::constant(0, x);
}

}  // namespace

template <>
std::string Poly<FieldElement>::to_string(const std::vector<std::string>& names) const {
  const auto nm = names.empty() ? default_names(nvars_) : names;
  std::vector<std::pair<std::string, std::string>> t;
  for (const auto& [m, c] : terms_) t.emplace_back(c.to_string(), m.to_string(nm));
  return render_terms(t);
}

template <>
std::string Poly<MultiPoly>::to_string(const std::vector<std::string>& names) const {
  return param_poly_to_string(*this, {}, names);
}

std::string param_poly_to_string(const ParamPoly& f, const std::vector<std::string>& param_names,
                                 const std::vector<std::string>& var_names) {
  const auto nm = var_names.empty() ? default_names(f.nvars()) : var_names;
  std::vector<std::pair<std::string, std::string>> t;
  for (const auto& [m, c] : f.terms()) {
    const auto pn = param_names.empty() ? default_names(std::max(c.nvars(), 1), "p") : param_names;
    t.emplace_back(c.to_string(pn), m.to_string(nm));
  }
  return render_terms(t);
}

// -- substitution -----------------------------------------------------------

template <class R>
Poly<R> substitute_linear(const Poly<R>& f, const Matrix& t) {
  if (t.rows() != f.nvars())
    throw DimensionMismatch("substitute_linear: form has " + std::to_string(f.nvars()) +
                            " variables, transform has " + std::to_string(t.rows()) + " rows");
  const int n = t.cols();
  // Image of each variable, and a cache of its powers.
  std::vector<std::vector<Poly<R>>> powers(static_cast<std::size_t>(f.nvars()));
  for (int i = 0; i < f.nvars(); ++i) {
    std::vector<typename Poly<R>::Term> lt;
    for (int j = 0; j < n; ++j)
      if (!t(i, j).is_zero()) lt.emplace_back(Monomial::var(j), coeff_from_field<R>(t(i, j)));
    powers[static_cast<std::size_t>(i)].push_back(Poly<R>::constant(n, Poly<R>::unit_coeff()));
    powers[static_cast<std::size_t>(i)].push_back(Poly<R>::from_terms(n, std::move(lt)));
  }
  auto power = [&](int i, int k) -> const Poly<R>& {
    auto& cache = powers[static_cast<std::size_t>(i)];
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * cache[1]);
    return cache[static_cast<std::size_t>(k)];
  };
  Poly<R> out(n);
  for (const auto& [m, c] : f.terms()) {
    Poly<R> term = Poly<R>::constant(n, c);
    for (int i = 0; i < f.nvars(); ++i)
      if (m[i] > 0) term *= power(i, m[i]);
    out += term;
  }
  return out;
}

template MultiPoly substitute_linear(const MultiPoly&, const Matrix&);
template ParamPoly substitute_linear(const ParamPoly&, const Matrix&);

FieldElement evaluate(const MultiPoly& f, const Vec& point) {
  if (static_cast<int>(point.size()) != f.nvars()) throw DimensionMismatch("evaluate: point dimension mismatch");
  FieldElement s;
  for (const auto& [m, c] : f.terms()) {
    FieldElement v = c;
    for (int i = 0; i < f.nvars() && !v.is_zero(); ++i)
      if (m[i] > 0) v *= point[static_cast<std::size_t>(i)].pow(m[i]);
    s += v;
  }
  return s;
}

MultiPoly specialize(const ParamPoly& f, const Vec& params) {
  std::vector<MultiPoly::Term> t;
  for (const auto& [m, c] : f.terms()) {
    Vec p = params;
    p.resize(static_cast<std::size_t>(c.nvars()));
    FieldElement v = evaluate(c, p);
    if (!v.is_zero()) t.emplace_back(m, std::move(v));
  }
  return MultiPoly::from_terms(f.nvars(), std::move(t));
}

ParamPoly lift_constant(const MultiPoly& f, int nparams) {
  std::vector<ParamPoly::Term> t;
  for (const auto& [m, c] : f.terms()) t.emplace_back(m, MultiPoly::constant(nparams, c));
  return ParamPoly::from_terms(f.nvars(), std::move(t));
}

MultiPoly substitute_vars(const MultiPoly& f, const std::vector<MultiPoly>& images) {
  if (static_cast<int>(images.size()) < f.nvars()) throw DimensionMismatch("substitute_vars: too few images");
  const int n = images.empty() ? 0 : images[0].nvars();
  MultiPoly out(n);
  for (const auto& [m, c] : f.terms()) {
    MultiPoly term = MultiPoly::constant(n, c);
    for (int i = 0; i < f.nvars(); ++i)
      if (m[i] > 0) term *= images[static_cast<std::size_t>(i)].pow(m[i]);
    out += term;
  }
  return out.with_nvars(n);
}

ParamPoly substitute_params(const ParamPoly& f, const std::vector<MultiPoly>& images) {
  std::vector<ParamPoly::Term> t;
  for (const auto& [m, c] : f.terms()) {
    MultiPoly v = substitute_vars(c.with_nvars(static_cast<int>(images.size())), images);
    if (!v.is_zero()) t.emplace_back(m, std::move(v));
  }
  return ParamPoly::from_terms(f.nvars(), std::move(t));
}

std::optional<FieldElement> proportionality(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero()) return g.is_zero() ? std::optional<FieldElement>(FieldElement(1)) : std::nullopt;
  const FieldElement lambda = g.coeff(f.lm()) / f.lc();
  if (g.size() != f.size() && !lambda.is_zero()) return std::nullopt;
  if (f.scaled(lambda) == g) return lambda;
  return std::nullopt;
}

namespace {

FieldElement monic_factor(const FieldElement& c) { return c.inverse(); }
FieldElement monic_factor(const MultiPoly& c) { return c.lc().inverse(); }

}  // namespace

template <class R>
std::vector<R> coefficient_conditions(const Poly<R>& f, const Poly<R>& g) {
  // Union of supports, in term order.
  std::vector<Monomial> support;
  for (const auto& t : f.terms()) support.push_back(t.first);
  for (const auto& t : g.terms()) support.push_back(t.first);
  std::sort(support.begin(), support.end(), [](const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) > 0; });
  support.erase(std::unique(support.begin(), support.end()), support.end());
  std::vector<R> fa, ga;
  for (const auto& m : support) {
    fa.push_back(f.coeff(m));
    ga.push_back(g.coeff(m));
  }
  std::vector<R> out;
  for (std::size_t a = 0; a < support.size(); ++a)
    for (std::size_t b = a + 1; b < support.size(); ++b) {
      R minor = fa[a] * ga[b] - fa[b] * ga[a];
      if (Poly<R>::is_zero_coeff(minor)) continue;
      minor = minor * monic_factor(minor);
      if (std::find(out.begin(), out.end(), minor) == out.end()) out.push_back(std::move(minor));
    }
  return out;
}

template std::vector<FieldElement> coefficient_conditions(const MultiPoly&, const MultiPoly&);
template std::vector<MultiPoly> coefficient_conditions(const ParamPoly&, const ParamPoly&);

MultiPoly restrict_to_span(const MultiPoly& f, const std::vector<Vec>& basis) {
  if (basis.empty()) return MultiPoly(0);
  return substitute_linear(f, Matrix::from_columns(basis));
}

MultiPoly eliminate_variable(const MultiPoly& f, const Vec& relation, int k) {
  const int n = f.nvars();
  if (static_cast<int>(relation.size()) != n) throw DimensionMismatch("eliminate_variable: relation length");
  const FieldElement& ck = relation[static_cast<std::size_t>(k)];
  if (ck.is_zero()) throw DivisionByZero();
  Matrix t(n, n - 1);
  for (int i = 0, col = 0; i < n; ++i) {
    if (i == k) continue;
    t(i, col) = 1;
    t(k, col) = -relation[static_cast<std::size_t>(i)] / ck;
    ++col;
  }
  return substitute_linear(f, t);
}

// -- DSL parser --------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(const std::string& s, const ParseContext& ctx) : s_(s), ctx_(ctx) {}

  MultiPoly run() {
    MultiPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, ParseError::Kind k = ParseError::Kind::Syntax) const {
    throw ParseError(k, pos_, msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  MultiPoly expr() {
    MultiPoly acc(ctx_.nvars);
    bool first = true;
    for (;;) {
      skip();
      bool neg = false;
      if (!first || (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))) {
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
          neg = s_[pos_] == '-';
          ++pos_;
        } else {
          break;
        }
      }
      MultiPoly t = term();
      acc = neg ? acc - t : acc + t;
      first = false;
    }
    return acc.with_nvars(ctx_.nvars);
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (peek('*')) {
      ++pos_;
      acc *= factor();
    }
    return acc;
  }

  MultiPoly factor() {
    MultiPoly base = primary();
    while (peek('^')) {
      ++pos_;
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const long k = std::stol(s_.substr(start, pos_ - start));
      if (k > 64) fail("exponent too large");
      base = base.pow(static_cast<int>(k));
    }
    return base;
  }

  long read_int() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::stol(s_.substr(start, pos_ - start));
  }

  MultiPoly literal(int order, std::size_t at) {
    if (ctx_.conductor % order != 0) {
      pos_ = at;
      fail("literal needs a field containing the " + std::to_string(order) + "th roots of unity",
           ParseError::Kind::WrongField);
    }
    return MultiPoly::constant(ctx_.nvars, FieldElement::zeta(order));
  }

  MultiPoly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    const std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational v(read_int());
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected denominator");
        const long d = read_int();
        if (d == 0) fail("zero denominator");
        v /= d;
      }
      return MultiPoly::constant(ctx_.nvars, FieldElement(v));
    }
    if (c == 'w') {
      ++pos_;
      return literal(3, at);
    }
    if (c == 'i') {
      ++pos_;
      return literal(4, at);
    }
    if (c == 'z') {
      ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '5' &&
          (pos_ + 1 >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
        ++pos_;
        return literal(5, at);
      }
      pos_ = at;
      fail("unknown literal", ParseError::Kind::UnknownVariable);
    }
    if (c == 'x') {
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        pos_ = at;
        fail("unknown variable 'x'", ParseError::Kind::UnknownVariable);
      }
      const long k = read_int();
      if (k >= ctx_.nvars) {
        pos_ = at;
        fail("unknown variable 'x" + std::to_string(k) + "'", ParseError::Kind::UnknownVariable);
      }
      return MultiPoly::variable(ctx_.nvars, static_cast<int>(k));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) fail("unknown variable '" + std::string(1, c) + "'", ParseError::Kind::UnknownVariable);
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  ParseContext ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(const std::string& text, const ParseContext& ctx) {
  if (ctx.nvars < 0 || ctx.nvars > kMaxVars) throw std::invalid_argument("variable count out of range");
  return Parser(text, ctx).run();
}

int required_conductor(const std::string& text) {
  int n = 1;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    const bool word_start = k == 0 || !std::isalnum(static_cast<unsigned char>(text[k - 1]));
    if (!word_start) continue;
    if (c == 'w') n = lcm_conductor(n, 3);
    if (c == 'i') n = lcm_conductor(n, 4);
    if (c == 'z' && k + 1 < text.size() && text[k + 1] == '5') n = lcm_conductor(n, 5);
  }
  return n;
}

FieldElement parse_scalar(const std::string& text, int conductor) {
  const MultiPoly p = parse_poly(text, ParseContext{0, conductor});
  if (p.is_zero()) return FieldElement(0);
  return p.lc();
}

}  // namespace cubaut
