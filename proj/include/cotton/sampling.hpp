#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cotton/chart.hpp"
#include "cotton/cotton_algebra.hpp"
#include "cotton/polynomial.hpp"
#include "cotton/rational.hpp"

namespace cotton {

using Rng = std::mt19937_64;

/// p/q with |p| <= num_bound and 1 <= q <= den_bound, uniform in (p, q).
Rational random_rational(Rng& rng, long num_bound, long den_bound);

std::vector<Rational> random_point(Rng& rng, std::size_t dim, long num_bound = 100, long den_bound = 10);

/// Draws points until `count` nondegenerate ones are found.
std::vector<std::vector<Rational>> sample_nondegenerate_points(const MetricChart<Rational>& chart, Rng& rng,
                                                               std::size_t count, long num_bound = 100,
                                                               long den_bound = 10);

/// Random polynomial with integer coefficients in [-coef_bound, coef_bound];
/// each monomial of degree <= max_degree is present with probability `density`.
Polynomial random_polynomial(Rng& rng, const std::vector<std::string>& vars, unsigned max_degree, long coef_bound,
                             double density);

/// Constant diagonal base metric (entries of `base_diagonal`) plus random
/// polynomial perturbations in every component.
PolynomialMetric random_polynomial_metric(Rng& rng, const std::vector<std::string>& coords,
                                          const std::vector<long>& base_diagonal, unsigned max_degree = 2,
                                          long coef_bound = 3, double density = 0.3);

/// Schwartz-Zippel style identity test: evaluates `value` at `samples`
/// independent random rational points (|p|, q <= bound) and accepts iff
/// every value is zero.
bool identity_holds(const std::function<Rational(const std::vector<Rational>&)>& value, std::size_t nvars, Rng& rng,
                    std::size_t samples = 20, long bound = 1000);

/// Gram matrix P^T eta P on Q^3, with eta = diag(1, 1, -1) for q = 1 and
/// diag(1, -1, -1) for q = 2, and P a random integer matrix of determinant 1.
/// A vector x that is eta-orthonormal data maps to P^-1 x, which has the
/// same inner products under `gram`.
struct PseudoEuclidean3 {
  std::size_t q = 1;
  Matrix<Rational> eta;
  Matrix<Rational> p;
  Matrix<Rational> p_inv;
  Matrix<Rational> gram;

  Vec3<Rational> from_standard(const Vec3<Rational>& x) const;
};

PseudoEuclidean3 random_pseudo_euclidean(Rng& rng, std::size_t q);

/// Random element of O(eta): the Cayley transform (I - M)^-1 (I + M) of
/// M = eta A with A antisymmetric, entries of A in {-1, -1/2, 0, 1/2, 1}.
Matrix<Rational> random_isometry(Rng& rng, const Matrix<Rational>& eta);

/// Nonzero eta-null vector from the rational parametrization of the cone.
Vec3<Rational> random_standard_null(Rng& rng, std::size_t q);

Vec3<Rational> mat_vec(const Matrix<Rational>& m, const Vec3<Rational>& x);

}  // namespace cotton
