#ifndef CUBAUT_GEOMETRY_HPP
#define CUBAUT_GEOMETRY_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cubaut/linalg.hpp"
#include "cubaut/poly.hpp"

namespace cubaut {

class DegenerateFrame : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Point of P^n, stored with its first nonzero coordinate equal to 1.
class ProjPoint {
 public:
  ProjPoint() = default;
  explicit ProjPoint(Vec coords);
  static ProjPoint unit(int n, int i);

  const Vec& coords() const { return c_; }
  int size() const { return static_cast<int>(c_.size()); }
  const FieldElement& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.c_ == b.c_; }
  std::size_t hash() const;
  /// "(a:b:...)".
  std::string to_string() const;

 private:
  Vec c_;
};

struct ProjPointHash {
  std::size_t operator()(const ProjPoint& p) const { return p.hash(); }
};

/// Linear subspace of P^n held as the row-reduced basis of its affine cone.
class LinearSubspace {
 public:
  LinearSubspace() = default;
  /// Span of vectors (dependent input allowed).
  static LinearSubspace span(int ambient, const std::vector<Vec>& vectors);
  static LinearSubspace span(const std::vector<ProjPoint>& points);
  /// Common zero set of linear forms given by coefficient vectors.
  static LinearSubspace from_equations(int ambient, const std::vector<Vec>& forms);

  int ambient() const { return ambient_; }
  int dim_proj() const { return static_cast<int>(basis_.size()) - 1; }
  bool is_empty() const { return basis_.empty(); }
  const std::vector<Vec>& basis() const { return basis_; }
  /// Row-reduced equations.
  std::vector<Vec> equations() const;
  bool contains(const Vec& v) const;
  bool contains(const ProjPoint& p) const { return contains(p.coords()); }
  bool contains(const LinearSubspace& s) const;

  friend bool operator==(const LinearSubspace& a, const LinearSubspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  std::string to_string() const;

 private:
  int ambient_ = 0;  // number of homogeneous coordinates
  std::vector<Vec> basis_;
};

/// (join, meet).
std::pair<LinearSubspace, LinearSubspace> span_meet(const LinearSubspace& a, const LinearSubspace& b);

/// Projectivity given by an invertible matrix up to scalar; stored with
/// its first nonzero entry (row-major) equal to 1.
class ProjTransform {
 public:
  ProjTransform() = default;
  explicit ProjTransform(const Matrix& m);
  static ProjTransform identity(int n) { return ProjTransform(Matrix::identity(n)); }
  /// Coordinate permutation sending e_i to e_perm[i].
  static ProjTransform permutation(const std::vector<int>& perm);

  const Matrix& matrix() const { return m_; }
  int size() const { return m_.rows(); }
  ProjPoint apply(const ProjPoint& p) const { return ProjPoint(m_ * p.coords()); }
  ProjTransform operator*(const ProjTransform& b) const { return ProjTransform(m_ * b.m_); }
  ProjTransform inverse() const;
  bool is_identity() const { return m_ == Matrix::identity(m_.rows()); }

  friend bool operator==(const ProjTransform& a, const ProjTransform& b) { return a.m_ == b.m_; }
  std::size_t hash() const { return m_.hash(); }
  std::string to_string() const { return m_.to_string(); }

 private:
  Matrix m_;
};

struct ProjTransformHash {
  std::size_t operator()(const ProjTransform& t) const { return t.hash(); }
};

struct GeneralPositionResult {
  bool ok = true;
  /// Indices of a smallest dependent subset when !ok.
  std::vector<int> witness;
};

/// No d of the points lie in a P^(d-2), for every d up to n+1.
GeneralPositionResult general_position(const std::vector<ProjPoint>& points);

/// The projectivity with src[i] -> dst[i] for n+2 points of P^n in general position.
ProjTransform frame_map(const std::vector<ProjPoint>& src, const std::vector<ProjPoint>& dst);

/// Projectivities P*D (P the permutation matrix of perm, D diagonal) preserving
/// the form. The singular points must be the coordinate points.
std::vector<ProjTransform> diagonal_lifts(const MultiPoly& f, const std::vector<int>& perm, int max_conductor = 15);

/// f(T x) proportional to f.
bool preserves(const ProjTransform& t, const MultiPoly& f);

/// The form vanishes identically on the subspace.
bool subspace_contained(const LinearSubspace& s, const MultiPoly& f);
bool plane_contained(const LinearSubspace& plane, const MultiPoly& f);

/// Solutions of e^s = rho inside cyclotomic fields of conductor <= max_conductor,
/// for rho a rational times a root of unity.
std::vector<FieldElement> nth_roots(const FieldElement& rho, int s, int max_conductor = 15);

/// Diagonalization of an integer matrix: L * A * R = S with L, R unimodular.
struct SmithForm {
  std::vector<std::vector<long long>> l, s, r;
  int rank = 0;
};
SmithForm smith_form(const std::vector<std::vector<long long>>& a);

/// "(a:b:c)" with DSL scalar literals.
ProjPoint parse_point(const std::string& text, int conductor = 60);
/// Comma-separated linear forms; the subspace is their common zero set.
LinearSubspace parse_subspace(const std::string& text, int nvars, int conductor = 60);
/// Coefficient vector of a linear form.
Vec linear_coefficients(const MultiPoly& f);

}  // namespace cubaut

#endif  // CUBAUT_GEOMETRY_HPP
