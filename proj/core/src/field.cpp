#include "cubaut/field.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace cubaut {

namespace {

std::size_t hash_mpz(mpz_srcptr z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) * 0x9e3779b97f4a7c15ULL;
  const std::size_t n = mpz_size(z);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

struct CyclotomicTable {
  int phi = 1;
  std::vector<long> poly;  // Phi_n, low degree first, monic
};

std::mutex& table_mutex() {
  static std::mutex m;
  return m;
}

std::array<std::unique_ptr<CyclotomicTable>, kMaxConductor + 1>& tables() {
  static std::array<std::unique_ptr<CyclotomicTable>, kMaxConductor + 1> t;
  return t;
}

std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den) {
  // den monic
  const int dn = static_cast<int>(den.size()) - 1;
  const int nn = static_cast<int>(num.size()) - 1;
  std::vector<long> q(static_cast<std::size_t>(nn - dn + 1), 0);
  for (int i = nn; i >= dn; --i) {
    const long c = num[static_cast<std::size_t>(i)];
    q[static_cast<std::size_t>(i - dn)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dn; ++j) num[static_cast<std::size_t>(i - dn + j)] -= c * den[static_cast<std::size_t>(j)];
  }
  return q;
}

const CyclotomicTable& build_locked(int n) {
  auto& slot = tables()[static_cast<std::size_t>(n)];
  if (!slot) {
    std::vector<long> p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (int d = 1; d < n; ++d)
      if (n % d == 0) p = poly_div_exact(p, build_locked(d).poly);
    auto t = std::make_unique<CyclotomicTable>();
    t->phi = static_cast<int>(p.size()) - 1;
    t->poly = std::move(p);
    slot = std::move(t);
  }
  return *slot;
}

const CyclotomicTable& table(int n) {
  if (n < 1 || n > kMaxConductor) throw ConductorOverflow(n);
  std::lock_guard<std::mutex> lock(table_mutex());
  return build_locked(n);
}

/// In-place reduction of a dense polynomial modulo Phi_n; result has size phi(n).
void reduce_mod_phi(int n, std::vector<Rational>& c) {
  const auto& t = table(n);
  const int phi = t.phi;
  for (int i = static_cast<int>(c.size()) - 1; i >= phi; --i) {
    Rational& lead = c[static_cast<std::size_t>(i)];
    if (sgn(lead) != 0) {
      for (int j = 0; j < phi; ++j) {
        const long pj = t.poly[static_cast<std::size_t>(j)];
        if (pj != 0) c[static_cast<std::size_t>(i - phi + j)] -= lead * pj;
      }
    }
  }
  c.resize(static_cast<std::size_t>(phi));
}

/// Solves A y = b over Q for A with full column rank; returns false when inconsistent.
bool solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b, std::vector<Rational>& y) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    pivcol.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (sgn(b[i]) != 0) return false;
  y.assign(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) y[pivcol[i]] = b[i] / a[i][pivcol[i]];
  return true;
}

std::vector<int> divisors(int n) {
  std::vector<int> d;
  for (int i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int i = 2; i * i <= n; ++i)
    if (n % i == 0) return false;
  return true;
}

std::string zeta_symbol(int n) {
  switch (n) {
    case 3:
      return "w";
    case 4:
      return "i";
    case 5:
      return "z5";
    default:
      return "z" + std::to_string(n);
  }
}

}  // namespace

std::size_t hash_rational(const Rational& q) {
  return hash_mpz(q.get_num_mpz_t()) * 31 + hash_mpz(q.get_den_mpz_t());
}

int euler_phi(int n) { return table(n).phi; }

const std::vector<long>& cyclotomic_polynomial(int n) { return table(n).poly; }

int lcm_conductor(int a, int b) {
  int l = std::lcm(a, b);
  if (l % 4 == 2) l /= 2;
  if (l > kMaxConductor) throw ConductorOverflow(l);
  return l;
}

FieldElement::FieldElement(long num, long den) {
  if (den == 0) throw DivisionByZero();
  r0_ = Rational(num, den);
  r0_.canonicalize();
}

const Rational& FieldElement::rational() const {
  if (n_ != 1) throw std::logic_error("FieldElement::rational on an irrational value " + to_string());
  return r0_;
}

std::vector<Rational> FieldElement::coeffs() const { return dense(); }

std::vector<Rational> FieldElement::dense() const {
  std::vector<Rational> c;
  c.reserve(rest_.size() + 1);
  c.push_back(r0_);
  c.insert(c.end(), rest_.begin(), rest_.end());
  return c;
}

FieldElement FieldElement::from_reduced(int n, std::vector<Rational> c) {
  FieldElement x;
  x.n_ = n;
  x.r0_ = std::move(c[0]);
  x.rest_.assign(std::make_move_iterator(c.begin() + 1), std::make_move_iterator(c.end()));
  x.normalize_conductor();
  return x;
}

FieldElement FieldElement::canonicalize(int n, std::vector<Rational> raw) {
  if (n < 1) throw std::invalid_argument("conductor must be positive");
  if (raw.empty()) return FieldElement();
  for (auto& r : raw) r.canonicalize();
  if (n % 4 == 2) {
    // zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
    const int m = n / 2;
    std::vector<Rational> moved(static_cast<std::size_t>(std::max(m, 1)), Rational(0));
    for (std::size_t j = 0; j < raw.size(); ++j) {
      if (sgn(raw[j]) == 0) continue;
      const long e = (static_cast<long>(j) * ((m + 1) / 2)) % m;
      if (j % 2 == 0)
        moved[static_cast<std::size_t>(e)] += raw[j];
      else
        moved[static_cast<std::size_t>(e)] -= raw[j];
    }
    return canonicalize(m, std::move(moved));
  }
  if (n > kMaxConductor) throw ConductorOverflow(n);
  if (n == 1) {
    Rational s = 0;
    for (auto& r : raw) s += r;
    return FieldElement(s);
  }
  // zeta^n = 1: fold exponents first.
  if (raw.size() > static_cast<std::size_t>(n)) {
    std::vector<Rational> folded(static_cast<std::size_t>(n), Rational(0));
    for (std::size_t j = 0; j < raw.size(); ++j) folded[j % static_cast<std::size_t>(n)] += raw[j];
    raw = std::move(folded);
  }
  const int phi = euler_phi(n);
  if (raw.size() < static_cast<std::size_t>(phi)) raw.resize(static_cast<std::size_t>(phi), Rational(0));
  reduce_mod_phi(n, raw);
  return from_reduced(n, std::move(raw));
}

FieldElement FieldElement::zeta(int n, long k) {
  if (n < 1) throw std::invalid_argument("conductor must be positive");
  long e = k % n;
  if (e < 0) e += n;
  std::vector<Rational> raw(static_cast<std::size_t>(n), Rational(0));
  raw[static_cast<std::size_t>(e)] = 1;
  return canonicalize(n, std::move(raw));
}

void FieldElement::normalize_conductor() {
  if (n_ == 1) return;
  if (std::all_of(rest_.begin(), rest_.end(), [](const Rational& q) { return sgn(q) == 0; })) {
    n_ = 1;
    rest_.clear();
    return;
  }
  if (is_prime(n_) || n_ == 4) return;
  const auto dn = dense();
  const int phin = euler_phi(n_);
  for (int d : divisors(n_)) {
    if (d == 1 || d == n_ || d % 4 == 2) continue;
    const int phid = euler_phi(d);
    std::vector<std::vector<Rational>> a(static_cast<std::size_t>(phin), std::vector<Rational>(static_cast<std::size_t>(phid)));
    for (int j = 0; j < phid; ++j) {
      std::vector<Rational> raw(static_cast<std::size_t>(n_), Rational(0));
      raw[static_cast<std::size_t>((static_cast<long>(n_ / d) * j) % n_)] = 1;
      reduce_mod_phi(n_, raw);
      for (int i = 0; i < phin; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = raw[static_cast<std::size_t>(i)];
    }
    std::vector<Rational> y;
    if (solve_rational(a, dn, y)) {
      n_ = d;
      r0_ = y[0];
      rest_.assign(y.begin() + 1, y.end());
      return;
    }
  }
}

std::vector<Rational> FieldElement::embed(int m) const {
  if (m % n_ != 0) throw std::invalid_argument("embed: target conductor is not a multiple");
  if (m == n_) return dense();
  const int step = m / n_;
  std::vector<Rational> raw(static_cast<std::size_t>(m), Rational(0));
  raw[0] = r0_;
  for (std::size_t j = 0; j < rest_.size(); ++j) raw[(j + 1) * static_cast<std::size_t>(step)] = rest_[j];
  reduce_mod_phi(m, raw);
  return raw;
}

FieldElement FieldElement::operator-() const {
  FieldElement x = *this;
  x.r0_ = -x.r0_;
  for (auto& r : x.rest_) r = -r;
  return x;
}

FieldElement& FieldElement::operator+=(const FieldElement& b) {
  if (n_ == b.n_) {
    r0_ += b.r0_;
    for (std::size_t j = 0; j < rest_.size(); ++j) rest_[j] += b.rest_[j];
    if (n_ != 1) normalize_conductor();
    return *this;
  }
  const int m = lcm_conductor(n_, b.n_);
  auto x = embed(m);
  auto y = b.embed(m);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] += y[j];
  *this = from_reduced(m, std::move(x));
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& b) { return *this += -b; }

FieldElement& FieldElement::operator*=(const FieldElement& b) {
  if (n_ == 1 && b.n_ == 1) {
    r0_ *= b.r0_;
    return *this;
  }
  if (b.n_ == 1) {
    r0_ *= b.r0_;
    for (auto& r : rest_) r *= b.r0_;
    normalize_conductor();
    return *this;
  }
  if (n_ == 1) {
    Rational s = r0_;
    *this = b;
    r0_ *= s;
    for (auto& r : rest_) r *= s;
    normalize_conductor();
    return *this;
  }
  const int m = lcm_conductor(n_, b.n_);
  auto x = embed(m);
  auto y = b.embed(m);
  std::vector<Rational> prod(x.size() + y.size() - 1, Rational(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (sgn(y[j]) != 0) prod[i + j] += x[i] * y[j];
  }
  reduce_mod_phi(m, prod);
  *this = from_reduced(m, std::move(prod));
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (n_ == 1) return FieldElement(Rational(1) / r0_);
  const int phi = euler_phi(n_);
  const auto a = dense();
  // Column j of the multiplication matrix is a * zeta^j.
  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(phi), std::vector<Rational>(static_cast<std::size_t>(phi)));
  for (int j = 0; j < phi; ++j) {
    std::vector<Rational> raw(static_cast<std::size_t>(phi + j), Rational(0));
    for (int i = 0; i < phi; ++i) raw[static_cast<std::size_t>(i + j)] = a[static_cast<std::size_t>(i)];
    reduce_mod_phi(n_, raw);
    for (int i = 0; i < phi; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = raw[static_cast<std::size_t>(i)];
  }
  std::vector<Rational> e(static_cast<std::size_t>(phi), Rational(0));
  e[0] = 1;
  std::vector<Rational> y;
  if (!solve_rational(m, e, y)) throw DivisionByZero();
  return from_reduced(n_, std::move(y));
}

FieldElement& FieldElement::operator/=(const FieldElement& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (n_ == 1 && b.n_ == 1) {
    r0_ /= b.r0_;
    return *this;
  }
  return *this *= b.inverse();
}

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement result(1);
  FieldElement base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

FieldElement FieldElement::conj() const {
  if (n_ == 1) return *this;
  std::vector<Rational> raw(static_cast<std::size_t>(n_), Rational(0));
  raw[0] = r0_;
  for (std::size_t j = 0; j < rest_.size(); ++j) raw[static_cast<std::size_t>(n_) - (j + 1)] = rest_[j];
  return canonicalize(n_, std::move(raw));
}

int FieldElement::root_of_unity_order() const {
  if (is_zero()) return 0;
  const int bound = (n_ % 2 == 1) ? 2 * n_ : n_;
  for (int d : divisors(bound))
    if (pow(d).is_one()) return d;
  return 0;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.n_ == b.n_ && a.r0_ == b.r0_ && a.rest_ == b.rest_;
}

std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  const int c0 = cmp(a.r0_, b.r0_);
  if (c0 != 0) return c0 < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  for (std::size_t j = 0; j < a.rest_.size(); ++j) {
    const int cj = cmp(a.rest_[j], b.rest_[j]);
    if (cj != 0) return cj < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::size_t FieldElement::hash() const {
  std::size_t h = static_cast<std::size_t>(n_) * 1000003ULL ^ hash_rational(r0_);
  for (const auto& r : rest_) h = h * 1099511628211ULL ^ hash_rational(r);
  return h;
}

std::string FieldElement::to_string() const {
  if (n_ == 1) return r0_.get_str();
  const std::string sym = zeta_symbol(n_);
  std::ostringstream os;
  bool first = true;
  const auto c = dense();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (sgn(c[j]) == 0) continue;
    Rational v = c[j];
    const bool neg = sgn(v) < 0;
    if (neg) v = -v;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (j == 0) {
      os << v.get_str();
      continue;
    }
    if (v != 1) os << v.get_str() << "*";
    os << sym;
    if (j > 1) os << "^" << j;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.to_string(); }

}  // namespace cubaut
