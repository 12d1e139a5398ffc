#include "cubaut/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace cubaut {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return {};
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows_; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != m.cols_)
      throw std::invalid_argument("from_rows: ragged input");
    for (int j = 0; j < m.cols_; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols) { return from_rows(cols).transpose(); }

Matrix Matrix::diagonal(const Vec& d) {
  const int n = static_cast<int>(d.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

Vec Matrix::row(int i) const {
  Vec v(static_cast<std::size_t>(cols_));
  for (int j = 0; j < cols_; ++j) v[static_cast<std::size_t>(j)] = (*this)(i, j);
  return v;
}

Vec Matrix::column(int j) const {
  Vec v(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i) v[static_cast<std::size_t>(i)] = (*this)(i, j);
  return v;
}

Matrix Matrix::operator*(const Matrix& b) const {
  if (cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  Matrix c(rows_, b.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const FieldElement& aik = (*this)(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const FieldElement& bkj = b(k, j);
        if (!bkj.is_zero()) c(i, j) += aik * bkj;
      }
    }
  return c;
}

Vec Matrix::operator*(const Vec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("matrix-vector: dimension mismatch");
  Vec r(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const FieldElement& aij = (*this)(i, j);
      if (!aij.is_zero() && !v[static_cast<std::size_t>(j)].is_zero()) r[static_cast<std::size_t>(i)] += aij * v[static_cast<std::size_t>(j)];
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& b) const {
  Matrix c = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

Matrix Matrix::operator-(const Matrix& b) const {
  Matrix c = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] -= b.a_[i];
  return c;
}

Matrix Matrix::scaled(const FieldElement& s) const {
  Matrix c = *this;
  for (auto& x : c.a_) x *= s;
  return c;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_scalar() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (i != j && !(*this)(i, j).is_zero()) return false;
      if (i == j && (*this)(i, i) != (*this)(0, 0)) return false;
    }
  return true;
}

Matrix Matrix::rref(std::vector<int>* pivots) const {
  Matrix m = *this;
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int p = r;
    while (p < rows_ && m(p, c).is_zero()) ++p;
    if (p == rows_) continue;
    if (p != r)
      for (int j = 0; j < cols_; ++j) std::swap(m(p, j), m(r, j));
    const FieldElement inv = m(r, c).inverse();
    for (int j = c; j < cols_; ++j) m(r, j) *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const FieldElement f = m(i, c);
      for (int j = c; j < cols_; ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return m;
}

int Matrix::rank() const {
  std::vector<int> piv;
  rref(&piv);
  return static_cast<int>(piv.size());
}

std::vector<Vec> Matrix::nullspace() const {
  std::vector<int> piv;
  const Matrix r = rref(&piv);
  std::vector<bool> is_piv(static_cast<std::size_t>(cols_), false);
  for (int p : piv) is_piv[static_cast<std::size_t>(p)] = true;
  std::vector<Vec> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_piv[static_cast<std::size_t>(free)]) continue;
    Vec v(static_cast<std::size_t>(cols_));
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[static_cast<std::size_t>(piv[k])] = -r(static_cast<int>(k), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const int n = rows_;
  Matrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<int> piv;
  const Matrix r = aug.rref(&piv);
  if (static_cast<int>(piv.size()) < n || piv[static_cast<std::size_t>(n - 1)] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

FieldElement Matrix::det() const {
  if (rows_ != cols_) throw std::invalid_argument("det of non-square matrix");
  Matrix m = *this;
  FieldElement d(1);
  const int n = rows_;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return FieldElement(0);
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    const FieldElement inv = m(c, c).inverse();
    for (int i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      const FieldElement f = m(i, c) * inv;
      for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

std::optional<Vec> Matrix::solve(const Vec& b) const {
  Matrix aug(rows_, cols_ + 1);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
    aug(i, cols_) = b[static_cast<std::size_t>(i)];
  }
  std::vector<int> piv;
  const Matrix r = aug.rref(&piv);
  if (!piv.empty() && piv.back() == cols_) return std::nullopt;
  Vec x(static_cast<std::size_t>(cols_));
  for (std::size_t k = 0; k < piv.size(); ++k) x[static_cast<std::size_t>(piv[k])] = r(static_cast<int>(k), cols_);
  return x;
}

std::vector<FieldElement> Matrix::charpoly() const {
  // Faddeev-LeVerrier: M_0 = 0, c_n = 1, M_k = A M_{k-1} + c_{n-k+1} I,
  // c_{n-k} = -tr(A M_k) / k.
  const int n = rows_;
  std::vector<FieldElement> c(static_cast<std::size_t>(n + 1));
  c[static_cast<std::size_t>(n)] = 1;
  Matrix m(n, n);
  for (int k = 1; k <= n; ++k) {
    Matrix next = *this * m;
    for (int i = 0; i < n; ++i) next(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    m = next;
    const Matrix am = *this * m;
    FieldElement tr;
    for (int i = 0; i < n; ++i) tr += am(i, i);
    c[static_cast<std::size_t>(n - k)] = -tr / FieldElement(k);
  }
  return c;
}

int Matrix::conductor() const {
  int n = 1;
  for (const auto& x : a_) n = lcm_conductor(n, x.conductor());
  return n;
}

std::size_t Matrix::hash() const {
  std::size_t h = static_cast<std::size_t>(rows_ * 131 + cols_);
  for (const auto& x : a_) h = h * 1099511628211ULL ^ x.hash();
  return h;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << (*this)(i, j).to_string();
    }
  }
  os << "]";
  return os.str();
}

int rank_of(const std::vector<Vec>& vs) {
  if (vs.empty()) return 0;
  return Matrix::from_rows(vs).rank();
}

std::vector<Vec> row_basis(const std::vector<Vec>& vs) {
  if (vs.empty()) return {};
  std::vector<int> piv;
  const Matrix r = Matrix::from_rows(vs).rref(&piv);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(r.row(static_cast<int>(i)));
  return out;
}

bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vec normalized(Vec v) {
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    if (x.is_one()) return v;
    const FieldElement inv = x.inverse();
    for (auto& y : v) y *= inv;
    return v;
  }
  return v;
}

FieldElement dot(const Vec& a, const Vec& b) {
  FieldElement s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

std::string vec_to_string(const Vec& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i].to_string();
  }
  return s;
}

}  // namespace cubaut
