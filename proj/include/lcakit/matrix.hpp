#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lcakit/rational.hpp"

namespace lca {

// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Matrix m(r, c);
    for (size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw Error("ragged matrix rows");
      for (size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix column(const std::vector<T>& v) {
    Matrix m(v.size(), 1);
    for (size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  T& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    Matrix b(nr, nc);
    for (size_t i = 0; i < nr; ++i)
      for (size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(size_t r0, size_t c0, const Matrix& b) {
    for (size_t i = 0; i < b.rows(); ++i)
      for (size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix select_rows(const std::vector<size_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
  }
  Matrix select_cols(const std::vector<size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }
  std::vector<T> col(size_t j) const {
    std::vector<T> v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error("matrix product: dimension mismatch");
    Matrix r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == 0) continue;
        for (size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }
  Matrix operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix sum: dimension mismatch");
    Matrix r(*this);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix difference: dimension mismatch");
    Matrix r(*this);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }
  Matrix operator-() const {
    Matrix r(*this);
    for (auto& x : r.data_) x = -x;
    return r;
  }
  Matrix scaled(const T& s) const {
    Matrix r(*this);
    for (auto& x : r.data_) x *= s;
    return r;
  }
  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;

QMatrix to_rational(const ZMatrix& m);
// Throws if some entry is not an integer.
ZMatrix to_integer(const QMatrix& m);
// Least common multiple of all entry denominators.
Integer common_denominator(const QMatrix& m);

QMatrix hstack(const QMatrix& a, const QMatrix& b);
QMatrix vstack(const QMatrix& a, const QMatrix& b);
QMatrix block_diag(const QMatrix& a, const QMatrix& b);

// Linear algebra over Q.
size_t rank(const QMatrix& m);
Rational det(const QMatrix& m);
QMatrix inverse(const QMatrix& m);
// Columns form a basis of the right kernel.
QMatrix kernel(const QMatrix& m);
// Rows form a basis of the left kernel: K * m = 0.
QMatrix left_kernel(const QMatrix& m);
// Independent columns of m spanning its column space.
QMatrix column_basis(const QMatrix& m);
// Some x with m x = b, or false if none exists.
bool solve(const QMatrix& m, const QMatrix& b, QMatrix& x);
// An invertible matrix whose first columns are the given independent columns.
QMatrix extend_to_basis(const QMatrix& independent);

// Smith normal form over Z: u * a * v = d, with u, v unimodular,
// d diagonal with nonnegative entries d_0 | d_1 | ... .
struct SmithForm {
  ZMatrix u, v, d;
  ZMatrix uinv, vinv;
  size_t rank = 0;
  Integer diag(size_t i) const { return i < d.rows() && i < d.cols() ? d(i, i) : Integer(0); }
};
SmithForm smith(const ZMatrix& a, bool want_u = true, bool want_v = true);

// A basis of the column lattice of a, in reduced lower echelon form.
ZMatrix column_hnf(const ZMatrix& a);

// Determinant of a square integer matrix.
Integer det(const ZMatrix& m);

// Finitely generated abelian group Z^free_rank + sum Z/torsion_i (invariant factors).
struct AbelianGroup {
  size_t free_rank = 0;
  std::vector<Integer> torsion;
  std::string str() const;
  bool operator==(const AbelianGroup& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
};

// Z^rows / a Z^cols.
AbelianGroup cokernel(const ZMatrix& a);
// Homology at the middle of Z^p --d_in--> Z^q --d_out--> Z^r.
AbelianGroup homology(const ZMatrix& d_in, const ZMatrix& d_out);
// Invariant factors (>1) of a list of cyclic orders.
std::vector<Integer> invariant_factors(const std::vector<Integer>& orders);

std::string to_string(const QMatrix& m);

}  // namespace lca
