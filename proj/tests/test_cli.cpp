#include <gtest/gtest.h>

#include <sstream>

#include "cotton/app/commands.hpp"
#include "cotton/app/report.hpp"
#include "cotton/app/spec_files.hpp"
#include "cotton/errors.hpp"
#include "fixtures.hpp"

using namespace cotton;
using namespace cotton::app;

namespace {

std::string data_file(const std::string& name) { return std::string(COTTON_TEST_DATA) + "/" + name; }

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(MetricSpecFile, ParsesTheModel) {
  const MetricSpec spec = load_metric_spec(data_file("model.metric"));
  EXPECT_EQ(spec.metric.coords(), (std::vector<std::string>{"t", "s", "x"}));
  EXPECT_EQ(spec.metric.component(0, 0).to_string(), "x^3 + t*x");
  EXPECT_EQ(spec.metric.component(1, 0).to_string(), "1/2");
  EXPECT_FALSE(spec.mode.has_value());
  EXPECT_EQ(load_metric_spec(data_file("nonparallel.metric")).mode, "exact");
}

TEST(MetricSpecFile, WriteThenParseIsIdentity) {
  const PolynomialMetric m = cotton::testing::model("t^2 - 1");
  const std::string text = write_metric_spec(m);
  const MetricSpec again = parse_metric_spec(text);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(again.metric.component(i, j), m.component(i, j));
  }
  EXPECT_EQ(write_metric_spec(again.metric), text);
}

TEST(MetricSpecFile, RejectsMalformedInput) {
  const std::string head = "dim: 2\ncoords: [x, y]\ncomponents:\n";
  EXPECT_THROW(parse_metric_spec(head + "  x,x: x^^3\n"), ParseError);
  EXPECT_THROW(parse_metric_spec(head + "  x,z: 1\n"), InputError);
  EXPECT_THROW(parse_metric_spec(head + "  x,y: 1\n  y,x: 1\n"), InputError);
  EXPECT_THROW(parse_metric_spec(head + "  x,x: 1\ncolour: red\n"), InputError);
  EXPECT_THROW(parse_metric_spec("dim: 3\ncoords: [x, y]\ncomponents: {}\n"), InputError);
  EXPECT_THROW(parse_metric_spec(head + "  x,x: 1\nmode: fuzzy\n"), InputError);
  EXPECT_THROW(parse_metric_spec("[unbalanced"), InputError);
  EXPECT_THROW(load_metric_spec(data_file("no_such.metric")), InputError);
}

TEST(MetricSpecFile, ParseErrorsNameTheComponent) {
  try {
    parse_metric_spec("dim: 1\ncoords: [x]\ncomponents:\n  x,x: 1 + q\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("x,x"), std::string::npos) << e.what();
  }
}

TEST(TensorSpecFile, ReadsDecimalsExactly) {
  const TensorSpec spec = parse_tensor_spec(
      "inner_product: [[1, 0, 0], [0, 1, 0], [0, 0, -1]]\n"
      "tensor:\n  \"1,2,1\": 0.5\n  \"2,1,1\": -1/2\n");
  EXPECT_EQ(spec.tensor[idx27(0, 1, 0)], Rational(1, 2));
  EXPECT_EQ(spec.tensor[idx27(1, 0, 0)], Rational(-1, 2));
  EXPECT_EQ(spec.inner_product(2, 2), Rational(-1));
  const TensorSpec again = parse_tensor_spec(write_tensor_spec(spec));
  EXPECT_EQ(again.tensor, spec.tensor);
}

TEST(TensorSpecFile, RejectsMalformedInput) {
  const std::string ip = "inner_product: [[1, 0, 0], [0, 1, 0], [0, 0, -1]]\n";
  EXPECT_THROW(parse_tensor_spec(ip + "tensor:\n  \"0,1,1\": 1\n"), InputError);
  EXPECT_THROW(parse_tensor_spec(ip + "tensor:\n  \"1,2\": 1\n"), InputError);
  EXPECT_THROW(parse_tensor_spec(ip + "tensor:\n  \"1,2,1\": abc\n"), InputError);
  EXPECT_THROW(parse_tensor_spec("inner_product: [[1, 2, 0], [0, 1, 0], [0, 0, -1]]\ntensor: {}\n"), InputError);
  EXPECT_THROW(parse_tensor_spec("inner_product: [[1, 0], [0, 1]]\ntensor: {}\n"), InputError);
}

TEST(Points, ParsesEveryCoordinateOnce) {
  const std::vector<std::string> coords{"t", "s", "x"};
  const auto pts = parse_points({"t=1/2,s=0,x=-3", "x=2, t=0.25, s=1"}, coords);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0][0], Rational(1, 2));
  EXPECT_EQ(pts[0][2], Rational(-3));
  EXPECT_EQ(pts[1][0], Rational(1, 4));
  EXPECT_EQ(pts[1][2], Rational(2));
  EXPECT_THROW(parse_points({"t=1,s=0"}, coords), InputError);
  EXPECT_THROW(parse_points({"t=1,s=0,x=1,t=2"}, coords), InputError);
  EXPECT_THROW(parse_points({"t=1,s=0,y=1"}, coords), InputError);
  EXPECT_THROW(parse_points({"t=1,s=0,x=one"}, coords), InputError);
}

TEST(Cli, CurvatureOfTheModel) {
  const Outcome o = run({"curvature", data_file("model.metric"), "--at", "t=0,s=0,x=2"});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("-6"), std::string::npos);
  const Outcome j = run({"curvature", data_file("model.metric"), "--at", "t=0,s=0,x=2", "--report", "json"});
  const Json doc = Json::parse(j.out);
  EXPECT_EQ(doc["command"], "curvature");
  EXPECT_EQ(doc["exit_code"], 0);
}

TEST(Cli, ClassifyIsChartLocal) {
  const Outcome o = run({"classify", data_file("model.metric"), "--seed", "7"});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("ECS"), std::string::npos);
  EXPECT_NE(o.out.find("chart-local verdict"), std::string::npos);
  const Outcome n = run({"classify", data_file("nonparallel.metric"), "--seed", "7", "--report", "json"});
  EXPECT_EQ(Json::parse(n.out)["verdict"], "NonParallel");
}

TEST(Cli, ClassifyNeedsSeedOrPoints) {
  EXPECT_EQ(run({"classify", data_file("model.metric")}).code, kExitInputError);
  EXPECT_EQ(run({"classify", data_file("model.metric"), "--at", "t=1,s=1,x=1"}).code, kExitOk);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"verify-model", "--a", "t/2 + 1/3"}).code, kExitOk);
  EXPECT_EQ(run({"verify-model", "--a", "s"}).code, kExitInputError);
  EXPECT_EQ(run({"curvature", data_file("corrupt.metric"), "--at", "t=0,s=0,x=2"}).code, kExitInputError);
  EXPECT_EQ(run({"curvature", data_file("no_such.metric"), "--at", "t=0,s=0,x=2"}).code, kExitInputError);
  EXPECT_EQ(run({"verify-model", "--tolerance", "1e-6"}).code, kExitInputError);
  EXPECT_EQ(run({"verify-model", "--mode", "float", "--tolerance", "fast"}).code, kExitInputError);
  EXPECT_EQ(run({"verify-model", "--mode", "float", "--tolerance", "1e-6"}).code, kExitOk);
  EXPECT_EQ(run({"decompose", data_file("rank_one.tensor")}).code, kExitOk);
  EXPECT_EQ(run({"decompose", data_file("not_cotton.tensor")}).code, kExitPrecondition);
  EXPECT_EQ(run({"no-such-command"}).code, kExitInputError);
  EXPECT_EQ(run({"selftest", "--mode", "float", "--inject-fault", "model-metric"}).code, kExitCheckFailed);
  EXPECT_EQ(run({"selftest", "--mode", "float", "--inject-fault", "unknown"}).code, kExitInputError);
}

TEST(Cli, DegenerateSampleIsAPreconditionViolation) {
  EXPECT_EQ(run({"curvature", data_file("degenerate.metric"), "--at", "x=1,y=0,z=0"}).code, kExitOk);
  EXPECT_EQ(run({"curvature", data_file("degenerate.metric"), "--at", "x=0,y=0,z=0"}).code, kExitPrecondition);
}

TEST(Cli, DecomposeReportsTheNullDirection) {
  const Outcome o = run({"decompose", data_file("rank_one.tensor"), "--report", "json"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const Json doc = Json::parse(o.out);
  EXPECT_EQ(doc["kind"], "RankOneKernel");
  const Outcome z = run({"decompose", data_file("zero.tensor"), "--report", "json"});
  EXPECT_EQ(Json::parse(z.out)["kind"], "ZeroTensor");
  const Outcome bad = run({"decompose", data_file("not_cotton.tensor"), "--report", "json"});
  EXPECT_NE(bad.out.find("(i) antisymmetry"), std::string::npos);
}

class JsonRoundTrip : public ::testing::TestWithParam<std::tuple<std::string, std::string>> {};

TEST_P(JsonRoundTrip, ReportsReserializeByteForByte) {
  const auto& [mode, which] = GetParam();
  std::vector<std::string> args;
  if (which == "curvature") args = {"curvature", data_file("model.metric"), "--at", "t=1/2,s=0,x=3"};
  if (which == "classify") args = {"classify", data_file("model.metric"), "--seed", "3", "--samples", "4"};
  if (which == "verify-model") args = {"verify-model", "--a", "t^2 - 1", "--seed", "5", "--samples", "3"};
  if (which == "decompose") args = {"decompose", data_file("rank_one.tensor")};
  if (which == "input-error") args = {"curvature", data_file("corrupt.metric"), "--at", "t=0,s=0,x=2"};
  args.insert(args.end(), {"--mode", mode, "--report", "json"});
  const Outcome o = run(args);
  ASSERT_FALSE(o.out.empty()) << o.err;
  const Json doc = Json::parse(o.out);
  EXPECT_EQ(dump_json(doc), o.out);
  EXPECT_EQ(doc["mode"], mode);
  EXPECT_EQ(doc["exit_code"], o.code);
}

INSTANTIATE_TEST_SUITE_P(Cli, JsonRoundTrip,
                         ::testing::Combine(::testing::Values("exact", "float"),
                                            ::testing::Values("curvature", "classify", "verify-model", "decompose",
                                                              "input-error")));
