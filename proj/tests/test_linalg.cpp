#include <gtest/gtest.h>

#include <cmath>

#include "cotton/linalg.hpp"
#include "cotton/sampling.hpp"

using namespace cotton;

namespace {

Matrix<Rational> rational_matrix(std::size_t r, std::size_t c, std::initializer_list<long> entries) {
  std::vector<Rational> data;
  for (long e : entries) data.emplace_back(e);
  return Matrix<Rational>(r, c, std::move(data));
}

}  // namespace

TEST(Linalg, DeterminantAndAdjugate) {
  const auto m = rational_matrix(3, 3, {2, -1, 0, 1, 3, 4, 0, 5, -2});
  const Rational det = determinant(m);
  EXPECT_EQ(det, Rational(-54));
  const auto prod = multiply(m, adjugate(m));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(prod(i, j), i == j ? det : Rational(0));
  }
}

TEST(Linalg, AdjugateNeedsSizeTwo) {
  EXPECT_THROW(adjugate(rational_matrix(1, 1, {3})), PreconditionError);
}

TEST(Linalg, ExactNullspace) {
  const auto m = rational_matrix(2, 3, {1, 2, 3, 2, 4, 6});
  const auto ns = nullspace(m);
  ASSERT_EQ(ns.size(), 2u);
  for (const auto& v : ns) {
    EXPECT_EQ(v[0] + Rational(2) * v[1] + Rational(3) * v[2], Rational(0));
  }
  EXPECT_EQ(rank(m), 1u);
}

TEST(Linalg, FloatNullspaceByRelativeThreshold) {
  const Matrix<double> m(2, 3, std::vector<double>{1, 2, 3, 2, 4, 6 + 1e-14});
  const auto ns = nullspace(m);
  EXPECT_EQ(ns.size(), 2u);
  EXPECT_EQ(rank(m), 1u);
  const Matrix<double> full(2, 3, std::vector<double>{1, 0, 0, 0, 1, 0});
  EXPECT_EQ(nullspace(full).size(), 1u);
}

TEST(LinalgProperty, RandomIsometriesPreserveEta) {
  Rng rng(31);
  for (std::size_t q : {1u, 2u}) {
    const PseudoEuclidean3 pe = random_pseudo_euclidean(rng, q);
    EXPECT_EQ(determinant(pe.p), Rational(1));
    for (int k = 0; k < 20; ++k) {
      const auto o = random_isometry(rng, pe.eta);
      const auto check = multiply(multiply(transpose(o), pe.eta), o);
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(check(i, j), pe.eta(i, j));
      }
    }
  }
}
