#ifndef CUBAUT_LINALG_HPP
#define CUBAUT_LINALG_HPP

#include <optional>
#include <string>
#include <vector>

#include "cubaut/field.hpp"

namespace cubaut {

using Vec = std::vector<FieldElement>;

// Dense matrix over FieldElement, row-major. Sizes in this project never
// exceed 10x10, so everything is plain Gaussian elimination.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols)) {}
  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<Vec>& rows);
  static Matrix from_columns(const std::vector<Vec>& cols);
  static Matrix diagonal(const Vec& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  FieldElement& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  const FieldElement& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }

  Vec row(int i) const;
  Vec column(int j) const;

  Matrix operator*(const Matrix& b) const;
  Vec operator*(const Vec& v) const;
  Matrix operator+(const Matrix& b) const;
  Matrix operator-(const Matrix& b) const;
  Matrix scaled(const FieldElement& s) const;
  Matrix transpose() const;
  bool is_zero() const;
  bool is_scalar() const;

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  /// Reduced row echelon form; pivot columns are appended to *pivots.
  Matrix rref(std::vector<int>* pivots = nullptr) const;
  int rank() const;
  /// Basis of { v : A v = 0 }.
  std::vector<Vec> nullspace() const;
  std::optional<Matrix> inverse() const;
  FieldElement det() const;
  std::optional<Vec> solve(const Vec& b) const;
  /// Characteristic polynomial det(tI - A), coefficients low degree first.
  std::vector<FieldElement> charpoly() const;
  /// Smallest conductor containing every entry.
  int conductor() const;

  std::size_t hash() const;
  std::string to_string() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<FieldElement> a_;
};

/// Rank of a list of vectors (as rows).
int rank_of(const std::vector<Vec>& vs);
/// Row-reduced basis for the span of vs (zero rows dropped).
std::vector<Vec> row_basis(const std::vector<Vec>& vs);
bool is_zero_vec(const Vec& v);
/// Scales v so that its first nonzero entry is 1.
Vec normalized(Vec v);
FieldElement dot(const Vec& a, const Vec& b);
std::string vec_to_string(const Vec& v, const char* sep = ", ");

}  // namespace cubaut

#endif  // CUBAUT_LINALG_HPP
