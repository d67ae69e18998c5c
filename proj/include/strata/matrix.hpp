#pragma once

#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

namespace strata {

/// Dense row-major matrix over any ring with value semantics.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == T(0)) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }
  Matrix operator+(const Matrix& o) const {
    Matrix r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    Matrix r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }
  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix sub(const std::vector<int>& rs, const std::vector<int>& cs) const {
    Matrix r(static_cast<int>(rs.size()), static_cast<int>(cs.size()));
    for (size_t i = 0; i < rs.size(); ++i)
      for (size_t j = 0; j < cs.size(); ++j) r(i, j) = (*this)(rs[i], cs[j]);
    return r;
  }

  template <class F>
  auto map(F f) const -> Matrix<decltype(f(std::declval<T>()))> {
    Matrix<decltype(f(std::declval<T>()))> r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

/// Determinant over a field by Gaussian elimination (exact for rationals).
template <class T>
T det_field(Matrix<T> m) {
  const int n = m.rows();
  T det(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (m(r, c) != T(0)) {
        p = r;
        break;
      }
    if (p < 0) return T(0);
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (m(r, c) == T(0)) continue;
      T f = m(r, c) / m(c, c);
      for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Division-free determinant by cofactor expansion with memoized column sets.
/// Suitable for polynomial entries and n ≤ 8.
template <class T>
T det_cofactor(const Matrix<T>& m) {
  const int n = m.rows();
  if (n == 0) return T(1);
  // memo[mask] = determinant of rows (n - popcount(mask))..n-1 restricted to columns in mask
  std::vector<T> memo(size_t(1) << n);
  std::vector<bool> have(size_t(1) << n, false);
  memo[0] = T(1);
  have[0] = true;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int k = __builtin_popcount(mask);
    int row = n - k;
    T acc(0);
    int sign_pos = 0;
    for (int c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      const T& a = m(row, c);
      if (a != T(0)) {
        T term = a * memo[mask & ~(1u << c)];
        if (sign_pos % 2) acc -= term;
        else acc += term;
      }
      ++sign_pos;
    }
    memo[mask] = acc;
  }
  return memo[(1u << n) - 1];
}

}  // namespace strata
