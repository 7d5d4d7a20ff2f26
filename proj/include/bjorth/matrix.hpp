#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "bjorth/errors.hpp"

namespace bjorth {

using cd = std::complex<double>;

// Dense complex matrix, row-major.  Column vectors are n x 1 matrices.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cd(0.0, 0.0)) {
    if (rows == 0 || cols == 0) throw DimensionError("Matrix: zero dimension");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diag(const std::vector<cd>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<cd>> rows) {
    if (rows.size() == 0) throw DimensionError("from_rows: empty");
    std::size_t nc = rows.begin()->size();
    Matrix m(rows.size(), nc);
    std::size_t i = 0;
    for (const auto& r : rows) {
      if (r.size() != nc) throw DimensionError("from_rows: ragged rows");
      std::size_t j = 0;
      for (const auto& v : r) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  static Matrix column(const std::vector<cd>& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  // Standard basis column vector e_i in C^n.
  static Matrix basis(std::size_t n, std::size_t i) {
    Matrix m(n, 1);
    m(i, 0) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  bool is_square() const { return rows_ == cols_; }
  bool is_vector() const { return cols_ == 1; }

  cd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<cd>& data() const { return data_; }

  Matrix adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  cd trace() const {
    if (!is_square()) throw DimensionError("trace: matrix not square");
    cd t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius() const {
    double s = 0.0;
    for (const cd& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double s = 0.0;
    for (const cd& z : data_) s = std::max(s, std::abs(z));
    return s;
  }

  bool all_finite() const {
    for (const cd& z : data_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
  }

  Matrix col(std::size_t j) const {
    Matrix v(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) v(i, 0) = (*this)(i, j);
    return v;
  }

  void set_col(std::size_t j, const Matrix& v) {
    if (v.rows() != rows_ || v.cols() != 1) throw DimensionError("set_col: bad column");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v(i, 0);
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }

  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }

  Matrix& operator*=(cd s) {
    for (cd& z : data_) z *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cd s) { return a *= s; }
  friend Matrix operator*(cd s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) { return a *= cd(-1.0, 0.0); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("*: inner dimensions disagree");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cd aik = a(i, k);
        if (aik == cd(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError(std::string("operator") + op + ": shapes disagree");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cd> data_;
};

// <a, b> = a* b for column vectors (conjugate-linear in a).
inline cd vdot(const Matrix& a, const Matrix& b) {
  if (!a.is_vector() || !b.is_vector() || a.rows() != b.rows()) {
    throw DimensionError("vdot: expects equal-length column vectors");
  }
  cd s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) s += std::conj(a(i, 0)) * b(i, 0);
  return s;
}

inline double vnorm(const Matrix& a) { return a.frobenius(); }

// Hermitian part (M + M*)/2.
inline Matrix herm_part(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("herm_part: matrix not square");
  Matrix h(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return h;
}

// Hermitian matrix capturing the anti-Hermitian part: (M - M*)/(2i).
inline Matrix skew_part(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("skew_part: matrix not square");
  Matrix k(m.rows(), m.cols());
  const cd half_over_i(0.0, -0.5);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      k(i, j) = half_over_i * (m(i, j) - std::conj(m(j, i)));
  return k;
}

inline double herm_defect(const Matrix& m) { return (m - m.adjoint()).frobenius(); }

// Kronecker product a (x) b.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cd aij = a(i, j);
      if (aij == cd(0.0, 0.0)) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

// Row-major vectorization m x n -> mn x 1 and its inverse.
inline Matrix vec(const Matrix& a) {
  Matrix v(a.rows() * a.cols(), 1);
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) v(k++, 0) = a(i, j);
  return v;
}

inline Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols) {
  if (v.cols() != 1 || v.rows() != rows * cols) throw DimensionError("unvec: size disagrees");
  Matrix a(rows, cols);
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = v(k++, 0);
  return a;
}

inline void require_same_shape(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(who) + ": operands must have equal shapes");
  }
}

inline void require_finite(const Matrix& a, const char* who) {
  if (!a.all_finite()) throw DimensionError(std::string(who) + ": non-finite entries");
}

}  // namespace bjorth
