#include <gtest/gtest.h>

#include "cotton/errors.hpp"
#include "cotton/geometry.hpp"
#include "cotton/sampling.hpp"
#include "fixtures.hpp"

using namespace cotton;
using namespace cotton::testing;

namespace {

std::vector<std::vector<Rational>> model_points(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  std::vector<std::vector<Rational>> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_point(rng, 3));
  return out;
}

PointEvidence record(bool c_zero, bool nc_zero, bool skipped = false) {
  PointEvidence e;
  e.cotton_vanishes = c_zero;
  e.nabla_cotton_vanishes = nc_zero;
  e.skipped = skipped;
  return e;
}

const std::vector<Rational> kDs{Rational(0), Rational(1), Rational(0)};

}  // namespace

TEST(ModelSpec, AcceptsFunctionsOfTOnly) {
  EXPECT_NO_THROW(ModelSpec::parse("3*t^3 + t"));
  EXPECT_THROW(ModelSpec::parse("s"), InputError);
  EXPECT_THROW(ModelSpec::parse("t*x"), InputError);
  EXPECT_THROW(ModelSpec(parse_expr("s + t", model_coords())), InputError);
  EXPECT_EQ(build_model(ModelSpec::parse("t^2")).component(0, 0), parse_expr("x^3 + t^2*x", model_coords()));
}

class ModelFamily : public ::testing::TestWithParam<const char*> {};

TEST_P(ModelFamily, IsAnExtendedCottonSpaceWithExactlyParallelCotton) {
  const auto chart = MetricChart<Rational>::from_polynomials(model(GetParam()));
  const auto points = model_points(61, 20);
  const ChartClassification c = classify_chart(chart, points);
  EXPECT_EQ(c.verdict, Verdict::ECS);
  EXPECT_EQ(c.sample_count, 20u);
  EXPECT_FALSE(c.witness.has_value());
  for (const auto& e : c.evidence) {
    EXPECT_TRUE(e.nabla_cotton_vanishes);
    EXPECT_FALSE(e.cotton_vanishes);
    EXPECT_EQ(e.nabla_cotton_norm, "0");
    EXPECT_EQ(e.cotton_norm, "3");
  }
}

INSTANTIATE_TEST_SUITE_P(Geometry, ModelFamily, ::testing::Values("0", "t", "t^2", "t^2 - 1", "3*t^3 + t"));

TEST(Classify, FlatChartIsConformallyFlat) {
  const auto chart = MetricChart<Rational>::from_polynomials(euclidean3());
  EXPECT_EQ(classify_chart(chart, model_points(62, 5)).verdict, Verdict::ConformallyFlat);
}

TEST(Classify, QuarticControlIsNonParallelWithAWitness) {
  const auto chart = MetricChart<Rational>::from_polynomials(model_variant("x^4"));
  const ChartClassification c = classify_chart(chart, model_points(63, 10));
  EXPECT_EQ(c.verdict, Verdict::NonParallel);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_FALSE(c.evidence[*c.witness].nabla_cotton_vanishes);
}

TEST(Classify, FloatModeMatchesExactMode) {
  const auto ce = MetricChart<Rational>::from_polynomials(model("t^2 - 1"));
  const auto cf = MetricChart<double>::from_polynomials(model("t^2 - 1"));
  const auto pts = model_points(64, 10);
  std::vector<std::vector<double>> ptf;
  for (const auto& p : pts) ptf.push_back({p[0].to_double(), p[1].to_double(), p[2].to_double()});
  EXPECT_EQ(classify_chart(ce, pts).verdict, classify_chart(cf, ptf).verdict);
}

TEST(Classify, DegenerateSamplesAreSkippedOnlyWhenAllowed) {
  const auto chart = MetricChart<Rational>::from_polynomials(
      metric_of({"x", "y", "z"}, {{{0, 0}, "x"}, {{1, 1}, "1"}, {{2, 2}, "1"}}));
  const std::vector<std::vector<Rational>> pts{{Rational(0), Rational(1), Rational(1)},
                                               {Rational(2), Rational(1), Rational(1)}};
  EXPECT_THROW(classify_chart(chart, pts), DegenerateMetric);
  ClassifyOptions opts;
  opts.allow_skip = true;
  const ChartClassification c = classify_chart(chart, pts, opts);
  EXPECT_TRUE(c.evidence[0].skipped);
  EXPECT_FALSE(c.evidence[0].note.empty());
  EXPECT_FALSE(c.evidence[1].skipped);
  // diag(x, 1, 1) is flat.
  EXPECT_EQ(c.verdict, Verdict::ConformallyFlat);
}

TEST(VerdictFold, Cases) {
  EXPECT_EQ(verdict_from({record(true, true), record(true, true)}), Verdict::ConformallyFlat);
  EXPECT_EQ(verdict_from({record(false, true), record(false, true)}), Verdict::ECS);
  EXPECT_EQ(verdict_from({record(false, true), record(true, true)}), Verdict::CottonParallelOnly);
  EXPECT_EQ(verdict_from({record(false, true), record(false, false)}), Verdict::NonParallel);
  EXPECT_EQ(verdict_from({record(true, true), record(false, false)}), Verdict::NonParallel);
  EXPECT_EQ(verdict_from({}), Verdict::Mixed);
  EXPECT_EQ(verdict_from({record(false, false, true)}), Verdict::Mixed);
  EXPECT_EQ(verdict_from({record(false, false, true), record(false, true)}), Verdict::ECS);
}

TEST(Distribution, ModelKernelIsTheSDirection) {
  const auto chart = MetricChart<Rational>::from_polynomials(model("t"));
  for (const auto& p : model_points(65, 10)) {
    const Subspace<Rational> d = distribution_D_at<Rational>(chart, p);
    ASSERT_EQ(d.dim(), 1u);
    EXPECT_EQ(d.basis[0], (Vec3<Rational>{Rational(0), Rational(1), Rational(0)}));
    EXPECT_TRUE(ricci_image_in_D_check<Rational>(chart, p));
  }
}

TEST(Distribution, FlatKernelIsEverything) {
  const auto chart = MetricChart<Rational>::from_polynomials(euclidean3());
  const std::vector<Rational> p{Rational(1), Rational(2), Rational(3)};
  EXPECT_EQ(distribution_D_at<Rational>(chart, p).dim(), 3u);
  EXPECT_TRUE(ricci_image_in_D_check<Rational>(chart, p));
}

TEST(Distribution, SphereRicciImageIsInTheFullKernel) {
  const auto chart = stereographic_sphere<Rational>(3);
  const std::vector<Rational> p{Rational(1, 2), Rational(1, 3), Rational(-1)};
  EXPECT_EQ(distribution_D_at<Rational>(chart, p).dim(), 3u);
  EXPECT_TRUE(ricci_image_in_D_check<Rational>(chart, p));
}

TEST(ExtractF, ModelHasFEqualToTwelveX) {
  // Ric = -3x dt(x)dt and u_flat = g(d_s, .) = dt / 2, so -f u(x)u = -f/4 dt(x)dt.
  const auto chart = MetricChart<Rational>::from_polynomials(model("t^2"));
  for (const auto& p : model_points(66, 5)) {
    EXPECT_EQ(extract_f_at<Rational>(chart, p, kDs), Rational(12) * p[2]);
    const Jet<Rational> f = f_jet_at<Rational>(chart, p, kDs);
    EXPECT_EQ(f.partial({0, 0, 1}), Rational(12));
    EXPECT_EQ(f.partial({1, 0, 0}), Rational(0));
  }
}

TEST(ExtractF, RicciFlatGivesZeroAndTheSphereIsRejected) {
  const auto flat = MetricChart<Rational>::from_polynomials(euclidean3());
  const std::vector<Rational> p{Rational(1), Rational(2), Rational(3)};
  EXPECT_EQ(extract_f_at<Rational>(flat, p, kDs), Rational(0));
  const auto sphere = stereographic_sphere<Rational>(3);
  EXPECT_THROW(extract_f_at<Rational>(sphere, p, kDs), NotRankOneForm);
  const std::vector<Rational> zero{Rational(0), Rational(0), Rational(0)};
  EXPECT_THROW(extract_f_at<Rational>(flat, p, zero), PreconditionError);
}

TEST(GradientIdentity, HoldsForScaledNullVectors) {
  const auto chart = MetricChart<Rational>::from_polynomials(model("t^2 - 1"));
  for (long lambda : {1L, 2L, -3L}) {
    const std::vector<Rational> u{Rational(0), Rational(lambda), Rational(0)};
    for (const auto& p : model_points(67, 5)) {
      const auto r = verify_gradient_identity_at<Rational>(chart, p, u);
      EXPECT_TRUE(r.holds) << lambda << " " << r.note;
      EXPECT_TRUE(r.residual.is_zero());
    }
  }
}

TEST(GradientIdentity, FloatModeHolds) {
  const auto chart = MetricChart<double>::from_polynomials(model("t"));
  const std::vector<double> u{0.0, 1.0, 0.0};
  const std::vector<double> p{0.5, -2.0, 1.75};
  const auto r = verify_gradient_identity_at<double>(chart, p, u);
  EXPECT_TRUE(r.holds);
  EXPECT_LT(r.residual, 1e-9);
}

TEST(GradientIdentity, FailsWhenRicciIsNotRankOneAlongU) {
  const auto chart = MetricChart<Rational>::from_polynomials(model_variant("x^3 + s*x"));
  const std::vector<Rational> p{Rational(1), Rational(2), Rational(3)};
  const auto r = verify_gradient_identity_at<Rational>(chart, p, kDs);
  EXPECT_FALSE(r.holds);
  EXPECT_NE(r.note.find("not a multiple"), std::string::npos);
}

TEST(ScalarFlat, ModelIsScalarFlatAndTheSphereIsNot) {
  const auto chart = MetricChart<Rational>::from_polynomials(model("t"));
  EXPECT_TRUE(scalar_flat_check(chart, model_points(68, 10)));
  const auto sphere = stereographic_sphere<Rational>(3);
  EXPECT_FALSE(scalar_flat_check(sphere, model_points(69, 3)));
}

TEST(VerifyModel, EveryCheckPasses) {
  const auto checks = verify_model(ModelSpec::parse("t/2 + 1/3"), model_points(70, 20));
  EXPECT_EQ(checks.size(), 7u);
  for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(VerifyModel, IsDeterministic) {
  const auto spec = ModelSpec::parse("t");
  const auto a = verify_model(spec, model_points(71, 5));
  const auto b = verify_model(spec, model_points(71, 5));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].name, b[k].name);
    EXPECT_EQ(a[k].detail, b[k].detail);
  }
}

TEST(ModelCotton, DecomposesAlongTheSDirection) {
  const auto chart = MetricChart<Rational>::from_polynomials(model("t"));
  for (const auto& p : model_points(72, 5)) {
    const auto ip = inner_product_at<Rational>(chart, p);
    const auto c = to_array27(tensor_values(cotton_at<Rational>(chart, p, 3)));
    const auto d = decompose(CottonLike<Rational>(c, ip), ip);
    ASSERT_EQ(d.kind, DecompositionKind::RankOneKernel);
    EXPECT_EQ(d.kernel.basis.at(0), (Vec3<Rational>{Rational(0), Rational(1), Rational(0)}));
    EXPECT_TRUE(d.certificate_residual.is_zero());
    // e1 = d_s gives a = 12; a scales as 1 / lambda^2 under e1 -> lambda e1, and e1 = 2 d_s lowers to dt.
    EXPECT_NEAR(d.a, 12.0, 1e-12);
    EXPECT_NEAR(d.a / 4.0, 3.0, 1e-12);
    EXPECT_NEAR(d.u[1] * d.u[1], 12.0, 1e-12);
    EXPECT_LT(d.residual, 1e-12);
  }
}
