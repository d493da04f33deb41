#include "cotton/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>

namespace cotton {

namespace {

/// Reduces in place; returns the pivot column of each nonzero row.
std::vector<std::size_t> rref(Matrix<Rational>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
    }
    const Rational inv = Rational(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const Rational factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!m(row, j).is_zero()) m(i, j) -= factor * m(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

Eigen::MatrixXd to_eigen(const Matrix<double>& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  }
  return m;
}

}  // namespace

std::vector<std::vector<Rational>> nullspace(const Matrix<Rational>& a) {
  Matrix<Rational> m = a;
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free] = Rational(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const Matrix<Rational>& a) {
  Matrix<Rational> m = a;
  return rref(m).size();
}

std::vector<std::vector<double>> nullspace(const Matrix<double>& a, double relative_threshold) {
  const std::size_t n = a.cols();
  if (a.rows() == 0) {
    std::vector<std::vector<double>> basis(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1.0;
    return basis;
  }
  // Pad to at least n rows so the full right singular basis is available.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(std::max<Eigen::Index>(a.rows(), n), n);
  m.topRows(a.rows()) = to_eigen(a);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double largest = sv.size() > 0 ? sv(0) : 0.0;
  std::vector<std::vector<double>> basis;
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(n); ++k) {
    const double s = k < sv.size() ? sv(k) : 0.0;
    if (largest == 0.0 || s <= relative_threshold * largest) {
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = svd.matrixV()(static_cast<Eigen::Index>(i), k);
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

std::size_t rank(const Matrix<double>& a, double relative_threshold) {
  return a.cols() - nullspace(a, relative_threshold).size();
}

}  // namespace cotton
