#ifndef CUBAUT_FIELD_HPP
#define CUBAUT_FIELD_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <gmpxx.h>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubaut {

/// Arbitrary precision rational number, always kept in lowest terms.
using Rational = mpq_class;

/// Raised by every exact division whose divisor is zero.
class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

/// Raised when an operation would need a cyclotomic field beyond kMaxConductor.
class ConductorOverflow : public std::runtime_error {
 public:
  explicit ConductorOverflow(int n)
      : std::runtime_error("cyclotomic conductor " + std::to_string(n) +
                           " exceeds the supported range"),
        conductor(n) {}
  int conductor;
};

inline constexpr int kMaxConductor = 240;

std::size_t hash_rational(const Rational& q);

/// Euler phi, cyclotomic polynomial coefficients (low degree first).
int euler_phi(int n);
const std::vector<long>& cyclotomic_polynomial(int n);

/// An element of Q(zeta_n).
///
/// Stored as the unique remainder modulo Phi_n in the power basis
/// 1, zeta, ..., zeta^(phi(n)-1), always at the smallest conductor whose
/// field contains the value. Two elements are equal iff their conductors
/// and coefficient vectors coincide, so hashing and ordering are well defined
/// across conductors. Rationals are conductor 1.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(long v) : r0_(v) {}  // NOLINT(google-explicit-constructor)
  FieldElement(int v) : r0_(v) {}   // NOLINT(google-explicit-constructor)
  FieldElement(Rational q) : r0_(std::move(q)) {  // NOLINT
    r0_.canonicalize();
  }
  FieldElement(long num, long den);

  /// zeta_n^k with zeta_n = exp(2 pi i / n).
  static FieldElement zeta(int n, long k = 1);

  /// Reduces sum raw[j] zeta_n^j (any length) modulo Phi_n.
  static FieldElement canonicalize(int n, std::vector<Rational> raw);

  int conductor() const { return n_; }
  int degree() const { return n_ == 1 ? 1 : euler_phi(n_); }
  bool is_zero() const { return n_ == 1 && sgn(r0_) == 0; }
  bool is_one() const { return n_ == 1 && r0_ == 1; }
  bool is_rational() const { return n_ == 1; }
  const Rational& rational() const;

  /// Power-basis coefficient j (0 <= j < degree()).
  const Rational& coeff(int j) const { return j == 0 ? r0_ : rest_[j - 1]; }
  std::vector<Rational> coeffs() const;

  /// Coefficients in Q(zeta_m); m must be a multiple of conductor().
  std::vector<Rational> embed(int m) const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& b);
  FieldElement& operator-=(const FieldElement& b);
  FieldElement& operator*=(const FieldElement& b);
  FieldElement& operator/=(const FieldElement& b);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

  FieldElement inverse() const;
  FieldElement pow(long e) const;

  /// Complex conjugation (zeta -> zeta^-1).
  FieldElement conj() const;

  /// Smallest m with x^m = 1, or 0 when x is not a root of unity of order
  /// dividing kMaxConductor-compatible bounds.
  int root_of_unity_order() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b);

  std::size_t hash() const;
  std::string to_string() const;

 private:
  static FieldElement from_reduced(int n, std::vector<Rational> c);
  void normalize_conductor();
  std::vector<Rational> dense() const;

  int n_ = 1;
  Rational r0_{0};
  std::vector<Rational> rest_;  // coefficients 1..phi(n)-1, empty when n == 1
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

int lcm_conductor(int a, int b);

}  // namespace cubaut

template <>
struct std::hash<cubaut::FieldElement> {
  std::size_t operator()(const cubaut::FieldElement& x) const noexcept { return x.hash(); }
};

#endif  // CUBAUT_FIELD_HPP
