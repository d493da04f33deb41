#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "cotton/cotton_algebra.hpp"
#include "cotton/curvature.hpp"
#include "cotton/geometry.hpp"
#include "cotton/sampling.hpp"
#include "fixtures.hpp"

using namespace cotton;
using namespace cotton::testing;

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};

struct RandomChart {
  PolynomialMetric metric;
  std::vector<std::vector<Rational>> points;
};

RandomChart random_chart(std::uint64_t seed, std::vector<long> base, std::size_t points) {
  Rng rng(seed);
  std::vector<std::string> coords = kXYZ;
  if (base.size() == 4) coords = {"w", "x", "y", "z"};
  RandomChart rc{random_polynomial_metric(rng, coords, base, 2, 3, 0.3), {}};
  const auto chart = MetricChart<Rational>::from_polynomials(rc.metric);
  rc.points = sample_nondegenerate_points(chart, rng, points, 5, 3);
  return rc;
}

}  // namespace

class RandomMetricSeed : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomMetricSeed, RiemannianAndLorentzianIdentitiesHoldExactly) {
  for (const auto& base : {std::vector<long>{1, 1, 1}, std::vector<long>{1, 1, -1}}) {
    const RandomChart rc = random_chart(GetParam(), base, 2);
    const auto chart = MetricChart<Rational>::from_polynomials(rc.metric);
    for (const auto& p : rc.points) {
      const PointCurvature<Rational> pc = curvature_at<Rational>(chart, p, 3);
      EXPECT_TRUE(first_bianchi_defect(pc.riemann).is_zero());
      EXPECT_TRUE(metric_compatibility_defect(pc.metric, pc.christoffel).is_zero());
      const auto d = cotton_symmetry_defects(pc);
      EXPECT_TRUE(d.antisymmetry.is_zero());
      EXPECT_TRUE(d.cyclic.is_zero());
      EXPECT_TRUE(d.trace.is_zero());
      EXPECT_TRUE(div_schouten_defect(pc).is_zero());
      EXPECT_TRUE(check_cotton_like(to_array27(tensor_values(pc.cotton)), inner_product_at<Rational>(chart, p)).ok);
    }
  }
}

TEST_P(RandomMetricSeed, RicciAndSchoutenAreSymmetric) {
  const RandomChart rc = random_chart(GetParam() + 1000, {1, 1, -1}, 2);
  const auto chart = MetricChart<Rational>::from_polynomials(rc.metric);
  for (const auto& p : rc.points) {
    const PointCurvature<Rational> pc = curvature_at<Rational>(chart, p, 2 + 1);
    const auto ric = tensor_values(pc.ricci);
    const auto sch = tensor_values(pc.schouten);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_EQ(ric(i, j), ric(j, i));
        EXPECT_EQ(sch(i, j), sch(j, i));
      }
    }
  }
}

TEST_P(RandomMetricSeed, WeylVanishesInDimensionThree) {
  const RandomChart rc = random_chart(GetParam() + 2000, {1, 1, 1}, 1);
  const auto chart = MetricChart<Rational>::from_polynomials(rc.metric);
  const auto w = tensor_values(weyl_at<Rational>(chart, rc.points[0], 2));
  for (const auto& v : w.data()) EXPECT_TRUE(v.is_zero());
}

TEST_P(RandomMetricSeed, FloatPipelineTracksTheExactOne) {
  const RandomChart rc = random_chart(GetParam() + 3000, {1, 1, -1}, 1);
  const auto ce = MetricChart<Rational>::from_polynomials(rc.metric);
  const auto cf = MetricChart<double>::from_polynomials(rc.metric);
  const auto& p = rc.points[0];
  const std::vector<double> pf{p[0].to_double(), p[1].to_double(), p[2].to_double()};
  const auto exact = tensor_values(cotton_at<Rational>(ce, p, 3));
  const auto approx = tensor_values(cotton_at<double>(cf, pf, 3));
  double scale = 1.0;
  for (const auto& v : exact.data()) scale = std::max(scale, std::fabs(v.to_double()));
  for (std::size_t k = 0; k < exact.size(); ++k) {
    EXPECT_NEAR(approx.at_flat(k), exact.at_flat(k).to_double(), 1e-8 * scale);
  }
}

INSTANTIATE_TEST_SUITE_P(Properties, RandomMetricSeed, ::testing::Values(101u, 102u, 103u, 104u));

TEST(Properties, ConstantConformalFactorLeavesCottonInvariant) {
  // C has conformal weight zero in dimension three for constant rescalings.
  const auto base = model("t");
  std::map<std::pair<std::size_t, std::size_t>, Polynomial> scaled;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) {
      if (!base.component(i, j).is_zero()) scaled.emplace(std::make_pair(i, j), base.component(i, j) * Rational(4));
    }
  }
  const auto c1 = MetricChart<Rational>::from_polynomials(base);
  const auto c2 = MetricChart<Rational>::from_polynomials(PolynomialMetric(model_coords(), scaled));
  const std::vector<Rational> p{Rational(1, 2), Rational(3), Rational(-2, 3)};
  EXPECT_EQ(tensor_values(cotton_at<Rational>(c1, p, 3)).data(), tensor_values(cotton_at<Rational>(c2, p, 3)).data());
}

TEST(Properties, AnnihilatedCottonLikeTensorsAreRankOne) {
  // A nonzero Cotton-like tensor killed by a null vector has a one-dimensional null kernel.
  Rng rng(111);
  for (std::size_t q : {1u, 2u}) {
    const PseudoEuclidean3 pe = random_pseudo_euclidean(rng, q);
    const InnerProduct3<Rational> ip(pe.gram);
    for (int n = 0; n < 10; ++n) {
      const auto w = pe.from_standard(random_standard_null(rng, q));
      const auto basis = cotton_like_annihilating(ip, w);
      ASSERT_FALSE(basis.empty());
      Array27<Rational> t{};
      t.fill(Rational(0));
      for (const auto& b : basis) {
        const Rational c = random_rational(rng, 5, 3);
        for (std::size_t k = 0; k < 27; ++k) t[k] += c * b[k];
      }
      if (max_abs(t).is_zero()) continue;
      const CottonLike<Rational> c(t, ip);
      const auto k = kernel(c, ip);
      ASSERT_EQ(k.dim(), 1u);
      EXPECT_EQ(causal_character(k.basis[0], ip), CausalCharacter::Null);
    }
  }
}

TEST(Properties, NonNullVectorsForceZero) {
  Rng rng(112);
  for (std::size_t q : {1u, 2u}) {
    const PseudoEuclidean3 pe = random_pseudo_euclidean(rng, q);
    const InnerProduct3<Rational> ip(pe.gram);
    for (int n = 0; n < 10; ++n) {
      const auto p = random_point(rng, 3, 10, 3);
      const Vec3<Rational> w{p[0], p[1], p[2]};
      if (ip(w, w).is_zero()) continue;
      EXPECT_TRUE(cotton_like_annihilating(ip, w).empty());
    }
  }
}
