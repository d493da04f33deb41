#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cotton/errors.hpp"
#include "cotton/rational.hpp"

namespace cotton {

/// Small dense row-major matrix. T may be a scalar or a Jet.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    std::vector<U> out;
    out.reserve(data_.size());
    for (const auto& x : data_) out.push_back(f(x));
    return Matrix<U>(rows_, cols_, std::move(out));
  }

  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw ArityMismatch("matrix data size mismatch");
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> identity_matrix(std::size_t n) {
  Matrix<T> m(n, n, T{0});
  for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
  return m;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
  Matrix<T> out(m.cols(), m.rows(), T{0});
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  }
  return out;
}

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw ArityMismatch("matrix product shape mismatch");
  Matrix<T> out(a.rows(), b.cols(), T{0});
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = out(i, j) + a(i, k) * b(k, j);
    }
  }
  return out;
}

template <class T>
Matrix<T> minor_matrix(const Matrix<T>& m, std::size_t skip_row, std::size_t skip_col) {
  std::vector<T> data;
  data.reserve((m.rows() - 1) * (m.cols() - 1));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i == skip_row) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j != skip_col) data.push_back(m(i, j));
    }
  }
  return Matrix<T>(m.rows() - 1, m.cols() - 1, std::move(data));
}

/// Cofactor expansion along the first row. Works over any commutative ring
/// (jets included); intended for the small dimensions charts have.
template <class T>
T determinant(const Matrix<T>& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw PreconditionError("determinant of non-square matrix");
  if (m.rows() == 1) return m(0, 0);
  if (m.rows() == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  T total = m(0, 0) * determinant(minor_matrix(m, 0, 0));
  for (std::size_t j = 1; j < m.cols(); ++j) {
    T term = m(0, j) * determinant(minor_matrix(m, 0, j));
    if (j % 2 == 0) {
      total = total + term;
    } else {
      total = total - term;
    }
  }
  return total;
}

/// Transpose of the cofactor matrix, so that m * adjugate(m) = det(m) I.
template <class T>
Matrix<T> adjugate(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  if (n < 2 || m.cols() != n) throw PreconditionError("adjugate needs a square matrix of size >= 2");
  std::vector<T> data;
  data.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // adj(i, j) = (-1)^{i+j} det(minor(j, i))
      T c = determinant(minor_matrix(m, j, i));
      data.push_back((i + j) % 2 == 0 ? c : -c);
    }
  }
  return Matrix<T>(n, n, std::move(data));
}

/// Basis of {x : A x = 0}, exact, via reduced row echelon form.
std::vector<std::vector<Rational>> nullspace(const Matrix<Rational>& a);
/// Numerical null space: right singular vectors whose singular value is at
/// most `relative_threshold` times the largest one.
std::vector<std::vector<double>> nullspace(const Matrix<double>& a, double relative_threshold = 1e-8);

std::size_t rank(const Matrix<Rational>& a);
std::size_t rank(const Matrix<double>& a, double relative_threshold = 1e-8);

}  // namespace cotton
