#include <gtest/gtest.h>

#include <cmath>

#include "cotton/curvature.hpp"
#include "cotton/errors.hpp"
#include "cotton/sampling.hpp"
#include "fixtures.hpp"

using namespace cotton;
using namespace cotton::testing;

namespace {

template <class S>
void expect_tensor_zero(const Tensor<S>& t) {
  for (const auto& v : t.data()) EXPECT_TRUE(is_zero(v));
}

const std::vector<Rational> kModelPoint{Rational(3, 2), Rational(-7, 3), Rational(5, 4)};

}  // namespace

TEST(Curvature, ModelChristoffelSymbols) {
  // a = 0: Gamma^x_tt = -(1/2) d_x g_tt = -3x^2/2, Gamma^s_tx = g^st (1/2) d_x g_tt = 3x^2.
  const auto chart = MetricChart<Rational>::from_polynomials(model("0"));
  const Rational x = kModelPoint[2];
  const Tensor<Rational> gamma = tensor_values(christoffel_at<Rational>(chart, kModelPoint, 2));
  EXPECT_EQ(gamma(2, 0, 0), Rational(-3, 2) * x * x);
  EXPECT_EQ(gamma(1, 0, 2), Rational(3) * x * x);
  EXPECT_EQ(gamma(1, 2, 0), Rational(3) * x * x);
  EXPECT_EQ(gamma(0, 0, 0), Rational(0));
  EXPECT_EQ(gamma(0, 0, 2), Rational(0));
}

TEST(Curvature, ModelRicciAtXEqualsTwo) {
  const auto chart = MetricChart<Rational>::from_polynomials(model("t"));
  const std::vector<Rational> p{Rational(0), Rational(0), Rational(2)};
  const Tensor<Rational> ric = tensor_values(ricci_at<Rational>(chart, p, 2));
  EXPECT_EQ(ric(0, 0), Rational(-6));
  for (std::size_t k = 1; k < ric.size(); ++k) EXPECT_EQ(ric.at_flat(k), Rational(0));
}

TEST(Curvature, ModelCottonComponents) {
  const auto chart = MetricChart<Rational>::from_polynomials(model("t^2 - 1"));
  const Tensor<Rational> c = tensor_values(cotton_at<Rational>(chart, kModelPoint, 3));
  for (std::size_t k = 0; k < c.size(); ++k) {
    const auto idx = c.unflatten(k);
    Rational expected(0);
    if (idx == std::vector<std::size_t>{0, 2, 0}) expected = Rational(3);
    if (idx == std::vector<std::size_t>{2, 0, 0}) expected = Rational(-3);
    EXPECT_EQ(c.at_flat(k), expected) << k;
  }
}

TEST(Curvature, ModelSchoutenDerivative) {
  // (nabla_x P)_tt = d_x(-3x) = -3, derivative index first.
  const auto chart = MetricChart<Rational>::from_polynomials(model("t"));
  const PointCurvature<Rational> pc = curvature_at<Rational>(chart, kModelPoint, 3);
  EXPECT_EQ(tensor_values(pc.nabla_schouten)(2, 0, 0), Rational(-3));
  EXPECT_EQ(pc.scalar.value(), Rational(0));
  expect_tensor_zero(tensor_values(*curvature_at<Rational>(chart, kModelPoint, 4).nabla_cotton));
}

TEST(Curvature, FlatChartHasNoCurvature) {
  const auto chart = MetricChart<Rational>::from_polynomials(euclidean3());
  const std::vector<Rational> p{Rational(1), Rational(2), Rational(3)};
  const PointCurvature<Rational> pc = curvature_at<Rational>(chart, p, 4);
  expect_tensor_zero(tensor_values(pc.riemann));
  expect_tensor_zero(tensor_values(pc.cotton));
  expect_tensor_zero(tensor_values(*pc.nabla_cotton));
  EXPECT_TRUE(pc.scalar.value().is_zero());
}

TEST(Curvature, RoundTwoSphere) {
  // Unit 2-sphere: Ric = g, s = 2.
  const auto chart = stereographic_sphere<Rational>(2);
  const std::vector<Rational> p{Rational(1, 3), Rational(-2, 5)};
  const auto md = metric_data_at<Rational>(chart, p, 2);
  const auto ric = tensor_values(ricci_at<Rational>(chart, p, 2));
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(ric(i, j), md.g(i, j).value());
  }
  EXPECT_EQ(scalar_curvature_at<Rational>(chart, p, 2).value(), Rational(2));
  EXPECT_THROW(weyl_at<Rational>(chart, p, 2), PreconditionError);
}

TEST(Curvature, RoundThreeSphereIsEinsteinAndConformallyFlat) {
  // Unit 3-sphere: Ric = 2g, s = 6, P = g/2, C = 0, W = 0.
  const auto chart = stereographic_sphere<Rational>(3);
  const std::vector<Rational> p{Rational(1, 2), Rational(-1, 3), Rational(2)};
  const PointCurvature<Rational> pc = curvature_at<Rational>(chart, p, 3);
  const auto ric = tensor_values(pc.ricci);
  const auto sch = tensor_values(pc.schouten);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(ric(i, j), Rational(2) * pc.metric.g(i, j).value());
      EXPECT_EQ(sch(i, j), Rational(1, 2) * pc.metric.g(i, j).value());
    }
  }
  EXPECT_EQ(pc.scalar.value(), Rational(6));
  expect_tensor_zero(tensor_values(pc.cotton));
  expect_tensor_zero(tensor_values(weyl(pc.metric, pc.riemann, pc.schouten)));
}

TEST(Curvature, SignConventionOnTheSphere) {
  // Positive sectional curvature: R_1221 = g_11 g_22 > 0 with R(X,Y)Z = [nabla_X, nabla_Y]Z - nabla_[X,Y]Z
  // and R_ijkl = g(R(d_i, d_j) d_k, d_l).
  const auto chart = stereographic_sphere<Rational>(2);
  const std::vector<Rational> p{Rational(0), Rational(0)};
  const auto md = metric_data_at<Rational>(chart, p, 2);
  const auto riem = tensor_values(riemann(md, christoffel(md)));
  EXPECT_EQ(riem(0, 1, 1, 0), md.g(0, 0).value() * md.g(1, 1).value());
  EXPECT_EQ(riem(0, 1, 0, 1), -md.g(0, 0).value() * md.g(1, 1).value());
}

TEST(Curvature, FloatSphereAgreesWithExact) {
  const auto ce = stereographic_sphere<Rational>(3);
  const auto cf = stereographic_sphere<double>(3);
  const std::vector<Rational> p{Rational(1, 2), Rational(-1, 3), Rational(2)};
  const std::vector<double> pf{0.5, -1.0 / 3.0, 2.0};
  EXPECT_NEAR(scalar_curvature_at<double>(cf, pf, 2).value(), 6.0, 1e-12);
  const auto re = tensor_values(ricci_at<Rational>(ce, p, 2));
  const auto rf = tensor_values(ricci_at<double>(cf, pf, 2));
  for (std::size_t k = 0; k < re.size(); ++k) EXPECT_NEAR(rf.at_flat(k), re.at_flat(k).to_double(), 1e-12);
}

TEST(Curvature, JetOrderPreconditions) {
  const auto chart = MetricChart<Rational>::from_polynomials(model("0"));
  EXPECT_THROW(curvature_at<Rational>(chart, kModelPoint, 2), InsufficientJetOrder);
  EXPECT_THROW(nabla_cotton_at<Rational>(chart, kModelPoint, 3), InsufficientJetOrder);
  EXPECT_THROW(ricci_at<Rational>(chart, kModelPoint, 1), InsufficientJetOrder);
  const PointCurvature<Rational> pc = curvature_at<Rational>(chart, kModelPoint, 3);
  EXPECT_FALSE(pc.nabla_cotton.has_value());
}

TEST(Curvature, QuarticControlIsNotParallel) {
  const auto chart = MetricChart<Rational>::from_polynomials(model_variant("x^4"));
  const std::vector<Rational> p{Rational(1), Rational(1), Rational(1)};
  const auto nc = tensor_values(nabla_cotton_at<Rational>(chart, p, 4));
  bool nonzero = false;
  for (const auto& v : nc.data()) nonzero = nonzero || !v.is_zero();
  EXPECT_TRUE(nonzero);
}

TEST(Curvature, GenericFourMetricHasWeyl) {
  Rng rng(41);
  const PolynomialMetric m = random_polynomial_metric(rng, {"w", "x", "y", "z"}, {1, 1, 1, -1}, 2, 3, 0.5);
  const auto chart = MetricChart<Rational>::from_polynomials(m);
  const auto pts = sample_nondegenerate_points(chart, rng, 1);
  const auto w = tensor_values(weyl_at<Rational>(chart, pts[0], 2));
  bool nonzero = false;
  for (const auto& v : w.data()) nonzero = nonzero || !v.is_zero();
  EXPECT_TRUE(nonzero);
}

TEST(Curvature, ConventionIndependenceOfCotton) {
  // Writing dt ds with g_ts = 1 instead of 1/2 leaves Ric and C of the model unchanged.
  const auto half = MetricChart<Rational>::from_polynomials(model_variant("x^3 + t*x", "1/2"));
  const auto one = MetricChart<Rational>::from_polynomials(model_variant("x^3 + t*x", "1"));
  const auto c1 = tensor_values(cotton_at<Rational>(half, kModelPoint, 3));
  const auto c2 = tensor_values(cotton_at<Rational>(one, kModelPoint, 3));
  for (std::size_t k = 0; k < c1.size(); ++k) EXPECT_EQ(c1.at_flat(k), c2.at_flat(k));
  EXPECT_EQ(tensor_values(ricci_at<Rational>(one, kModelPoint, 2))(0, 0), Rational(-3) * kModelPoint[2]);
}

TEST(Curvature, OneDimensionalChartsAreRejected) {
  EXPECT_THROW(MetricChart<Rational>::from_polynomials(metric_of({"x"}, {{{0, 0}, "1 + x^2"}})), PreconditionError);
}
