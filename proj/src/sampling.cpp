#include "cotton/sampling.hpp"

#include <algorithm>

#include "cotton/jet.hpp"

namespace cotton {

Rational random_rational(Rng& rng, long num_bound, long den_bound) {
  std::uniform_int_distribution<long> num(-num_bound, num_bound);
  std::uniform_int_distribution<long> den(1, den_bound);
  const long p = num(rng);
  const long q = den(rng);
  return Rational(p, q);
}

std::vector<Rational> random_point(Rng& rng, std::size_t dim, long num_bound, long den_bound) {
  std::vector<Rational> point;
  point.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) point.push_back(random_rational(rng, num_bound, den_bound));
  return point;
}

std::vector<std::vector<Rational>> sample_nondegenerate_points(const MetricChart<Rational>& chart, Rng& rng,
                                                               std::size_t count, long num_bound, long den_bound) {
  std::vector<std::vector<Rational>> points;
  std::size_t attempts = 0;
  while (points.size() < count) {
    if (++attempts > 100 * count + 100) throw DegenerateMetric("could not find nondegenerate sample points");
    auto p = random_point(rng, chart.dim(), num_bound, den_bound);
    const Rational det = determinant(values(metric_jets_at<Rational>(chart, p, 0)));
    if (!det.is_zero()) points.push_back(std::move(p));
  }
  return points;
}

namespace {

void monomials_up_to(std::size_t nvars, unsigned degree, std::size_t var, Exponent& current,
                     std::vector<Exponent>& out) {
  if (var == nvars) {
    out.push_back(current);
    return;
  }
  for (unsigned k = 0; k <= degree; ++k) {
    current[var] = k;
    monomials_up_to(nvars, degree - k, var + 1, current, out);
  }
  current[var] = 0;
}

}  // namespace

Polynomial random_polynomial(Rng& rng, const std::vector<std::string>& vars, unsigned max_degree, long coef_bound,
                             double density) {
  std::vector<Exponent> monomials;
  Exponent current(vars.size(), 0);
  monomials_up_to(vars.size(), max_degree, 0, current, monomials);
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<long> coef(-coef_bound, coef_bound);
  Polynomial p(vars);
  for (const auto& m : monomials) {
    if (keep(rng)) p.add_term(m, Rational(coef(rng)));
  }
  return p;
}

PolynomialMetric random_polynomial_metric(Rng& rng, const std::vector<std::string>& coords,
                                          const std::vector<long>& base_diagonal, unsigned max_degree,
                                          long coef_bound, double density) {
  const std::size_t n = coords.size();
  if (base_diagonal.size() != n) throw ArityMismatch("base diagonal size must match the dimension");
  std::map<std::pair<std::size_t, std::size_t>, Polynomial> components;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Polynomial p = random_polynomial(rng, coords, max_degree, coef_bound, density);
      if (i == j) p += Polynomial::constant(coords, Rational(base_diagonal[i]));
      components.emplace(std::make_pair(i, j), std::move(p));
    }
  }
  return PolynomialMetric(coords, components);
}

bool identity_holds(const std::function<Rational(const std::vector<Rational>&)>& value, std::size_t nvars, Rng& rng,
                    std::size_t samples, long bound) {
  for (std::size_t s = 0; s < samples; ++s) {
    if (!value(random_point(rng, nvars, bound, bound)).is_zero()) return false;
  }
  return true;
}

Vec3<Rational> mat_vec(const Matrix<Rational>& m, const Vec3<Rational>& x) {
  Vec3<Rational> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) out[i] += m(i, j) * x[j];
  }
  return out;
}

Vec3<Rational> PseudoEuclidean3::from_standard(const Vec3<Rational>& x) const { return mat_vec(p_inv, x); }

PseudoEuclidean3 random_pseudo_euclidean(Rng& rng, std::size_t q) {
  if (q != 1 && q != 2) throw PreconditionError("pseudo-Euclidean fixtures have index 1 or 2");
  PseudoEuclidean3 f;
  f.q = q;
  f.eta = identity_matrix<Rational>(3);
  f.eta(2, 2) = Rational(-1);
  if (q == 2) f.eta(1, 1) = Rational(-1);
  f.p = identity_matrix<Rational>(3);
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int step = 0; step < 3; ++step) {
    const int i = pick(rng);
    int j = pick(rng);
    while (j == i) j = pick(rng);
    const Rational c(sign(rng) ? 1 : -1);
    for (std::size_t k = 0; k < 3; ++k) f.p(i, k) += c * f.p(j, k);
  }
  f.p_inv = adjugate(f.p);
  f.gram = multiply(multiply(transpose(f.p), f.eta), f.p);
  return f;
}

Matrix<Rational> random_isometry(Rng& rng, const Matrix<Rational>& eta) {
  std::uniform_int_distribution<int> entry(-2, 2);
  const Matrix<Rational> id = identity_matrix<Rational>(3);
  while (true) {
    Matrix<Rational> a(3, 3, Rational(0));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) {
        a(i, j) = Rational(entry(rng), 2);
        a(j, i) = -a(i, j);
      }
    }
    const Matrix<Rational> m = multiply(eta, a);
    Matrix<Rational> minus(3, 3, Rational(0));
    Matrix<Rational> plus(3, 3, Rational(0));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        minus(i, j) = id(i, j) - m(i, j);
        plus(i, j) = id(i, j) + m(i, j);
      }
    }
    const Rational det = determinant(minus);
    if (det.is_zero()) continue;
    Matrix<Rational> inv = adjugate(minus);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) inv(i, j) /= det;
    }
    return multiply(inv, plus);
  }
}

Vec3<Rational> random_standard_null(Rng& rng, std::size_t q) {
  std::uniform_int_distribution<long> d(-3, 3);
  long m = 0;
  long n = 0;
  while (m == 0 && n == 0) {
    m = d(rng);
    n = d(rng);
  }
  const Rational a(m * m + n * n);
  const Rational b(2 * m * n);
  const Rational c(m * m - n * n);
  if (q == 1) return {b, c, a};
  return {a, b, c};
}

}  // namespace cotton
