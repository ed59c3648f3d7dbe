#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qdet/errors.hpp"
#include "qdet/quaternion.hpp"

namespace qdet {

/// Dense row-major m x n quaternion matrix. All entries share the mode T.
template <Scalar T>
class QMatrix {
 public:
  using value_type = Quaternion<T>;

  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  QMatrix(std::size_t rows, std::size_t cols, std::vector<value_type> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw DimensionError("entry count does not match the shape");
  }
  QMatrix(std::initializer_list<std::initializer_list<value_type>> rows) : rows_(rows.size()) {
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged initializer for QMatrix");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static QMatrix identity(std::size_t n) {
    QMatrix id(n, n);
    for (std::size_t i = 0; i < n; ++i) id(i, i) = value_type(T(1));
    return id;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const value_type> entries() const { return data_; }
  std::span<value_type> entries() { return data_; }
  std::span<const value_type> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  bool is_zero() const {
    for (const auto& q : data_)
      if (!q.is_zero()) return false;
    return true;
  }

  /// Square and entry(i, j) == conj(entry(j, i)). Exact comparison in both modes.
  bool is_hermitian() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i).conj()) return false;
    return true;
  }

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const QMatrix& a, const QMatrix& b) { return !(a == b); }

  QMatrix& operator+=(const QMatrix& o) {
    require_same_shape(o);
    for (std::size_t p = 0; p < data_.size(); ++p) data_[p] += o.data_[p];
    return *this;
  }
  QMatrix& operator-=(const QMatrix& o) {
    require_same_shape(o);
    for (std::size_t p = 0; p < data_.size(); ++p) data_[p] -= o.data_[p];
    return *this;
  }
  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator*(QMatrix a, const T& s) {
    for (auto& q : a.data_) q = q * s;
    return a;
  }

 private:
  void require_same_shape(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

using QMatrixQ = QMatrix<Rational>;
using QMatrixD = QMatrix<double>;

/// 2m x 2n complex image of a quaternion matrix. Entry q = a + bi + cj + dk
/// becomes the block [[a+bi, c+di], [-c+di, a-bi]]; this map is multiplicative
/// and commutes with the conjugate transpose.
using ComplexMatrix = Eigen::MatrixXcd;

/// Row-by-column product with factor order a(i,s) * b(s,j).
template <Scalar T>
QMatrix<T> matmul(const QMatrix<T>& a, const QMatrix<T>& b);

template <Scalar T>
QMatrix<T> operator*(const QMatrix<T>& a, const QMatrix<T>& b) {
  return matmul(a, b);
}

template <Scalar T>
QMatrix<T> conj_transpose(const QMatrix<T>& a);

/// a^p by iterated multiplication; a^0 is the identity.
template <Scalar T>
QMatrix<T> mat_pow(const QMatrix<T>& a, std::size_t p);

/// Row rank by Gaussian elimination with quaternionic left division.
/// In float mode an entry counts as zero below `tol` times the largest
/// absolute component of the input; `tol` is ignored in exact mode.
template <Scalar T>
std::size_t rank(const QMatrix<T>& a, double tol = 1e-9);

/// Smallest k >= 0 with rank(a^(k+1)) == rank(a^k); 0 iff a is nonsingular.
template <Scalar T>
std::size_t index_of(const QMatrix<T>& a, double tol = 1e-9);

/// Rows `rows`, columns `cols` of a, in the given order.
template <Scalar T>
QMatrix<T> submatrix(const QMatrix<T>& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols);

template <Scalar T>
QMatrix<T> principal_submatrix(const QMatrix<T>& a, std::span<const std::size_t> idx) {
  return submatrix(a, idx, idx);
}

template <Scalar T>
std::vector<Quaternion<T>> column(const QMatrix<T>& a, std::size_t j);

template <Scalar T>
std::vector<Quaternion<T>> row(const QMatrix<T>& a, std::size_t i);

/// a with column j replaced by b.
template <Scalar T>
QMatrix<T> replace_column(QMatrix<T> a, std::size_t j, std::span<const Quaternion<T>> b);

/// a with row i replaced by b.
template <Scalar T>
QMatrix<T> replace_row(QMatrix<T> a, std::size_t i, std::span<const Quaternion<T>> b);

/// [a | b], side by side.
template <Scalar T>
QMatrix<T> hstack(const QMatrix<T>& a, const QMatrix<T>& b);

/// a^-1 by Gauss-Jordan elimination (partial pivoting in float mode).
/// Throws PreconditionError when a is singular.
template <Scalar T>
QMatrix<T> inverse(const QMatrix<T>& a);

/// m^-1 b without forming the inverse.
template <Scalar T>
QMatrix<T> solve_left(const QMatrix<T>& m, const QMatrix<T>& b);

template <Scalar T>
ComplexMatrix embed_complex(const QMatrix<T>& a);

/// Inverse of embed_complex on matrices in its image (reads the top row of each block).
QMatrixD unembed_complex(const ComplexMatrix& c);

QMatrixD to_double(const QMatrixQ& a);

/// max |a_ij[p] - b_ij[p]| over all entries and components.
double max_abs_difference(const QMatrixD& a, const QMatrixD& b);

}  // namespace qdet
